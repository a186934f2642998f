#pragma once

// CSV and JSON writers. CSV: UTF-8, LF line ends, '#'-prefixed metadata lines
// first, then one header line, numbers in shortest round-trip form.

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dce/channel.hpp"
#include "dce/evolve.hpp"
#include "dce/otto.hpp"
#include "dce/sweep.hpp"

namespace dce {

using Metadata = std::vector<std::pair<std::string, std::string>>;

struct CsvDocument {
    Metadata metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    std::string render() const;
};

Metadata params_metadata(const SimParams& p);

CsvDocument csv_of(const SweepTable& table);
// n,x,y,z,temperature
CsvDocument csv_of(const CycleTrajectory& traj);
// t,x,y,z,mean_n
CsvDocument csv_of(const std::vector<TrajectoryPoint>& traj, const SimParams& p);

// Temp file in the target directory, then rename. "-" writes to stdout.
void write_text_atomic(const std::string& path, const std::string& content);

void write_csv(const SweepTable& table, const std::string& path);
void write_csv(const CycleTrajectory& traj, const std::string& path);
void write_csv(const CsvDocument& doc, const std::string& path);

nlohmann::json tomography_report(const Propagator& u, const AffineMap& map, const FixedPointReport& fp);

} // namespace dce
