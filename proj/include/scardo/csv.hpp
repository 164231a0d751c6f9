#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "scardo/meanfield.hpp"
#include "scardo/simulator.hpp"

namespace scardo {

// Trajectory CSV contracts. Simulation files carry the header
//   t,tau,Y_1..Y_M,y_1..y_M,yo_1..yo_{m1}
// with one row per sample (counts Y, fractions y = Y/N, opinion-camp
// fractions yo). Mean-field files carry
//   tau,y_1..y_M,yo_1..yo_{m1}
// Numbers are locale-independent with 17 significant digits, so parsing
// them back reproduces the doubles exactly.

void write_sim_trajectory(const SimTrajectory& trajectory, std::ostream& out);
void write_sim_trajectory(const SimTrajectory& trajectory, const std::filesystem::path& path);

void write_meanfield_trajectory(const MeanFieldTrajectory& trajectory, std::ostream& out);
void write_meanfield_trajectory(const MeanFieldTrajectory& trajectory,
                                const std::filesystem::path& path);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// Reads a comma-separated numeric table with a header line.
CsvTable read_csv(std::istream& in);
CsvTable read_csv(const std::filesystem::path& path);

} // namespace scardo
