#pragma once

#include <span>
#include <variant>
#include <vector>

#include "scardo/attribute_space.hpp"
#include "scardo/ranking.hpp"
#include "scardo/simulator.hpp"
#include "scardo/transition.hpp"

namespace scardo {

/// Right-hand side of the mean-field system for the cortege fractions:
///
///   dy_q/dtau = sum_{s,l} y_s y_l f(s,l) p(s,l,q)  -  y_q sum_l y_l f(q,l)
///
/// The components sum to zero up to floating-point accumulation (the
/// total mass is a first integral). Cost O(M^2 + row nonzeros): the
/// weights y_s y_l f(s,l) are formed once and gains accumulate over the
/// tensor's nonzero row entries. Inputs need not be nonnegative — the
/// integrator probes slightly negative states.
std::vector<double> mean_field_rhs(std::span<const double> y, const TransitionTensor& tensor,
                                   const RankingMatrix& ranking);

struct IntegrationParams {
    double horizon = 1.0;
    double step = 1e-3;
    /// Record every record_interval-th step; the initial and final states
    /// are always recorded.
    std::size_t record_interval = 1;
    /// Stop early once the sup norm of the derivative falls below
    /// equilibrium_tolerance.
    bool stop_at_equilibrium = false;
    double equilibrium_tolerance = 1e-10;
};

/// Mean-field solution samples plus conservation monitors. The monitors
/// cover every integration step, not only the recorded ones, and are not
/// enforced: integration never clamps or projects the state, so a
/// misbehaving right-hand side shows up here instead of being masked.
struct MeanFieldTrajectory {
    SpacePtr space;
    double step = 0.0;
    std::vector<double> taus;
    std::vector<std::vector<double>> states;
    double max_sum_deviation = 0.0; ///< max |sum(y) - 1| over all steps
    double min_component = 0.0;     ///< min y_q over all steps
};

/// Classical fixed-step 4th-order Runge-Kutta from tau = 0 to the horizon
/// (the last step is shortened to land exactly). y0 must be nonnegative
/// and sum to one within 1e-9; it is renormalized exactly.
MeanFieldTrajectory integrate(std::span<const double> y0, const TransitionTensor& tensor,
                              const RankingMatrix& ranking, const IntegrationParams& params);

/// Per-sample opinion-camp fractions of a mean-field trajectory.
std::vector<std::vector<double>> opinion_trajectory(const MeanFieldTrajectory& trajectory);

struct TrajectoryComparison {
    double sup_error = 0.0;
    std::vector<double> per_cortege_max_error;
    std::vector<double> per_opinion_max_error;
    std::size_t compared_samples = 0;
    double tau_begin = 0.0;
    double tau_end = 0.0;
};

/// Deviation of a stochastic run from the mean-field solution:
/// |Y_q(tau N)/N - y_q(tau)| at every simulation sample inside the common
/// tau range, with the mean-field state linearly interpolated in tau.
TrajectoryComparison compare_trajectories(const SimTrajectory& sim,
                                          const MeanFieldTrajectory& mf);

/// Perturbation directions for sensitivity studies. Probabilities are
/// co-perturbed to stay stochastic: a tensor target moves mass between
/// p(s,l,k) and the self entry p(s,l,s); an initial-condition target
/// transfers mass between two components, staying on the simplex.
struct TensorEntryTarget {
    std::size_t recipient, donor, outcome;
};
struct RankingEntryTarget {
    std::size_t recipient, donor;
};
struct InitialTransferTarget {
    std::size_t increase, decrease;
};
using PerturbationTarget =
    std::variant<TensorEntryTarget, RankingEntryTarget, InitialTransferTarget>;

/// Central-difference sensitivity of the solution at the horizon:
/// (y(horizon; theta+eps) - y(horizon; theta-eps)) / (2 eps).
/// Throws if the perturbation pushes a probability outside [0, 1] or the
/// transfer direction is degenerate.
std::vector<double> parameter_sensitivity(std::span<const double> y0,
                                          const TransitionTensor& tensor,
                                          const RankingMatrix& ranking, double horizon,
                                          double step, const PerturbationTarget& target,
                                          double epsilon);

} // namespace scardo
