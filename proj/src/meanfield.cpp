#include "scardo/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "scardo/errors.hpp"

namespace scardo {

namespace {

void check_shapes(const TransitionTensor& tensor, const RankingMatrix& ranking) {
    if (!tensor.space().same_shape(ranking.space())) {
        throw ValidationError("tensor and ranking attribute spaces do not match");
    }
}

// Gain/loss form, accumulated into `out` (resized and zeroed here).
void rhs_into(std::span<const double> y, const TransitionTensor& tensor,
              const RankingMatrix& ranking, std::vector<double>& out) {
    const std::size_t m = tensor.cortege_count();
    out.assign(m, 0.0);
    for (std::size_t s = 0; s < m; ++s) {
        const double y_s = y[s];
        if (y_s == 0.0) continue;
        for (std::size_t l = 0; l < m; ++l) {
            const double w = y_s * y[l] * ranking.probability(s, l);
            if (w == 0.0) continue;
            tensor.for_each_outcome(s, l, [&](std::size_t k, double p) { out[k] += w * p; });
        }
    }
    for (std::size_t q = 0; q < m; ++q) {
        double reach = 0.0; // sum_l f(q,l) y_l
        for (std::size_t l = 0; l < m; ++l) reach += ranking.probability(q, l) * y[l];
        out[q] -= y[q] * reach;
    }
}

} // namespace

std::vector<double> mean_field_rhs(std::span<const double> y, const TransitionTensor& tensor,
                                   const RankingMatrix& ranking) {
    check_shapes(tensor, ranking);
    const std::size_t m = tensor.cortege_count();
    if (y.size() != m) {
        throw ValidationError("state vector has length " + std::to_string(y.size()) +
                              ", expected " + std::to_string(m));
    }
    for (std::size_t q = 0; q < m; ++q) {
        if (!std::isfinite(y[q])) {
            throw ValidationError("state component " + std::to_string(q + 1) + " is not finite");
        }
    }
    std::vector<double> out;
    rhs_into(y, tensor, ranking, out);
    return out;
}

MeanFieldTrajectory integrate(std::span<const double> y0, const TransitionTensor& tensor,
                              const RankingMatrix& ranking, const IntegrationParams& params) {
    check_shapes(tensor, ranking);
    const std::size_t m = tensor.cortege_count();
    if (y0.size() != m) {
        throw ValidationError("initial condition has length " + std::to_string(y0.size()) +
                              ", expected " + std::to_string(m));
    }
    if (!(params.horizon > 0.0)) {
        throw ValidationError("integration horizon must be positive");
    }
    if (!(params.step > 0.0)) {
        throw ValidationError("integration step must be positive");
    }

    std::vector<double> y(y0.begin(), y0.end());
    double sum = 0.0;
    for (std::size_t q = 0; q < m; ++q) {
        if (!(y[q] >= 0.0)) {
            throw ValidationError("initial fraction " + std::to_string(q + 1) +
                                  " is negative or not finite");
        }
        sum += y[q];
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw ValidationError("initial fractions sum to " + std::to_string(sum) +
                              ", further than 1e-9 from one");
    }
    for (double& v : y) v /= sum;

    MeanFieldTrajectory traj;
    traj.space = tensor.space_ptr();
    traj.step = params.step;
    traj.max_sum_deviation = 0.0;
    traj.min_component = std::numeric_limits<double>::infinity();

    const auto monitor = [&](const std::vector<double>& state) {
        double total = 0.0;
        double low = std::numeric_limits<double>::infinity();
        for (const double v : state) {
            total += v;
            low = std::min(low, v);
        }
        traj.max_sum_deviation = std::max(traj.max_sum_deviation, std::abs(total - 1.0));
        traj.min_component = std::min(traj.min_component, low);
    };
    const auto record = [&](double tau, const std::vector<double>& state) {
        traj.taus.push_back(tau);
        traj.states.push_back(state);
    };

    monitor(y);
    record(0.0, y);

    const auto full_steps =
        static_cast<std::size_t>(std::ceil(params.horizon / params.step - 1e-9));
    const std::size_t total_steps = std::max<std::size_t>(full_steps, 1);
    const std::size_t record_interval = std::max<std::size_t>(params.record_interval, 1);

    std::vector<double> k1, k2, k3, k4, probe(m);
    for (std::size_t i = 1; i <= total_steps; ++i) {
        const bool last = i == total_steps;
        const double h = last ? params.horizon - static_cast<double>(i - 1) * params.step
                              : params.step;
        const double tau = last ? params.horizon : static_cast<double>(i) * params.step;

        rhs_into(y, tensor, ranking, k1);
        if (params.stop_at_equilibrium) {
            double sup = 0.0;
            for (const double v : k1) sup = std::max(sup, std::abs(v));
            if (sup < params.equilibrium_tolerance) {
                if (traj.taus.back() != static_cast<double>(i - 1) * params.step) {
                    record(static_cast<double>(i - 1) * params.step, y);
                }
                return traj;
            }
        }
        for (std::size_t q = 0; q < m; ++q) probe[q] = y[q] + 0.5 * h * k1[q];
        rhs_into(probe, tensor, ranking, k2);
        for (std::size_t q = 0; q < m; ++q) probe[q] = y[q] + 0.5 * h * k2[q];
        rhs_into(probe, tensor, ranking, k3);
        for (std::size_t q = 0; q < m; ++q) probe[q] = y[q] + h * k3[q];
        rhs_into(probe, tensor, ranking, k4);
        for (std::size_t q = 0; q < m; ++q) {
            y[q] += h / 6.0 * (k1[q] + 2.0 * k2[q] + 2.0 * k3[q] + k4[q]);
        }

        for (const double v : y) {
            if (!std::isfinite(v)) {
                throw std::runtime_error("mean-field state became non-finite at tau = " +
                                         std::to_string(tau));
            }
        }
        monitor(y);
        if (i % record_interval == 0 || last) record(tau, y);
    }
    return traj;
}

std::vector<std::vector<double>> opinion_trajectory(const MeanFieldTrajectory& trajectory) {
    std::vector<std::vector<double>> camps;
    camps.reserve(trajectory.states.size());
    for (const auto& y : trajectory.states) {
        camps.push_back(trajectory.space->aggregate_opinion_fractions(y));
    }
    return camps;
}

TrajectoryComparison compare_trajectories(const SimTrajectory& sim,
                                          const MeanFieldTrajectory& mf) {
    if (!sim.space->same_shape(*mf.space)) {
        throw ValidationError("simulation and mean-field attribute spaces do not match");
    }
    if (sim.taus.empty() || mf.taus.empty()) {
        throw ValidationError("cannot compare empty trajectories");
    }
    const double lo = std::max(sim.taus.front(), mf.taus.front());
    const double hi = std::min(sim.taus.back(), mf.taus.back());
    constexpr double tau_slack = 1e-9;
    if (lo > hi + tau_slack) {
        throw ValidationError("trajectories cover disjoint tau ranges");
    }

    const std::size_t m = sim.space->cortege_count();
    const auto n = static_cast<double>(sim.agent_count);

    TrajectoryComparison report;
    report.per_cortege_max_error.assign(m, 0.0);
    report.per_opinion_max_error.assign(sim.space->opinion_cardinality(), 0.0);
    report.tau_begin = lo;
    report.tau_end = hi;

    std::vector<double> sim_fractions(m);
    std::vector<double> mf_state(m);
    for (std::size_t i = 0; i < sim.taus.size(); ++i) {
        const double tau = sim.taus[i];
        if (tau < lo - tau_slack || tau > hi + tau_slack) continue;

        // Linear interpolation of the mean-field state at tau.
        const auto upper = std::upper_bound(mf.taus.begin(), mf.taus.end(), tau);
        if (upper == mf.taus.begin()) {
            mf_state = mf.states.front();
        } else if (upper == mf.taus.end()) {
            mf_state = mf.states.back();
        } else {
            const auto hi_idx = static_cast<std::size_t>(upper - mf.taus.begin());
            const std::size_t lo_idx = hi_idx - 1;
            const double span = mf.taus[hi_idx] - mf.taus[lo_idx];
            const double weight = span > 0.0 ? (tau - mf.taus[lo_idx]) / span : 0.0;
            for (std::size_t q = 0; q < m; ++q) {
                mf_state[q] =
                    mf.states[lo_idx][q] + weight * (mf.states[hi_idx][q] - mf.states[lo_idx][q]);
            }
        }

        for (std::size_t q = 0; q < m; ++q) {
            sim_fractions[q] = static_cast<double>(sim.counts[i][q]) / n;
        }
        const auto sim_camps = sim.space->aggregate_opinion_fractions(sim_fractions);
        const auto mf_camps = sim.space->aggregate_opinion_fractions(mf_state);

        for (std::size_t q = 0; q < m; ++q) {
            const double err = std::abs(sim_fractions[q] - mf_state[q]);
            report.per_cortege_max_error[q] = std::max(report.per_cortege_max_error[q], err);
            report.sup_error = std::max(report.sup_error, err);
        }
        for (std::size_t k = 0; k < sim_camps.size(); ++k) {
            const double err = std::abs(sim_camps[k] - mf_camps[k]);
            report.per_opinion_max_error[k] = std::max(report.per_opinion_max_error[k], err);
        }
        ++report.compared_samples;
    }
    if (report.compared_samples == 0) {
        throw ValidationError("no simulation samples fall inside the common tau range");
    }
    return report;
}

std::vector<double> parameter_sensitivity(std::span<const double> y0,
                                          const TransitionTensor& tensor,
                                          const RankingMatrix& ranking, double horizon,
                                          double step, const PerturbationTarget& target,
                                          double epsilon) {
    if (!(epsilon > 0.0)) {
        throw ValidationError("sensitivity step must be positive");
    }
    IntegrationParams params;
    params.horizon = horizon;
    params.step = step;
    params.record_interval = std::numeric_limits<std::size_t>::max(); // only the final state

    const auto final_state = [&](std::span<const double> start, const TransitionTensor& t,
                                 const RankingMatrix& r) {
        return integrate(start, t, r, params).states.back();
    };

    std::vector<double> plus, minus;
    if (const auto* entry = std::get_if<TensorEntryTarget>(&target)) {
        const auto t_plus =
            tensor.with_mass_shifted(entry->recipient, entry->donor, entry->outcome, epsilon);
        const auto t_minus =
            tensor.with_mass_shifted(entry->recipient, entry->donor, entry->outcome, -epsilon);
        plus = final_state(y0, t_plus, ranking);
        minus = final_state(y0, t_minus, ranking);
    } else if (const auto* entry = std::get_if<RankingEntryTarget>(&target)) {
        const double f = ranking.probability(entry->recipient, entry->donor);
        const auto r_plus = ranking.with_entry(entry->recipient, entry->donor, f + epsilon);
        const auto r_minus = ranking.with_entry(entry->recipient, entry->donor, f - epsilon);
        plus = final_state(y0, tensor, r_plus);
        minus = final_state(y0, tensor, r_minus);
    } else {
        const auto& transfer = std::get<InitialTransferTarget>(target);
        const std::size_t m = tensor.cortege_count();
        if (transfer.increase >= m || transfer.decrease >= m) {
            throw ValidationError("initial-condition component out of range");
        }
        if (transfer.increase == transfer.decrease) {
            throw ValidationError(
                "initial-condition transfer needs two distinct components to stay on the simplex");
        }
        std::vector<double> base(y0.begin(), y0.end());
        const auto shifted = [&](double delta) {
            std::vector<double> v = base;
            v[transfer.increase] += delta;
            v[transfer.decrease] -= delta;
            if (v[transfer.increase] < 0.0 || v[transfer.increase] > 1.0 ||
                v[transfer.decrease] < 0.0 || v[transfer.decrease] > 1.0) {
                throw ValidationError(
                    "perturbation pushes an initial fraction outside [0, 1]");
            }
            return v;
        };
        plus = final_state(shifted(epsilon), tensor, ranking);
        minus = final_state(shifted(-epsilon), tensor, ranking);
    }

    std::vector<double> sensitivity(plus.size());
    for (std::size_t q = 0; q < plus.size(); ++q) {
        sensitivity[q] = (plus[q] - minus[q]) / (2.0 * epsilon);
    }
    return sensitivity;
}

} // namespace scardo
