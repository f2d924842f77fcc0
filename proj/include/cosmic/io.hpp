#pragma once

// File output. Every file starts by declaring the schema version and the
// resolved configuration: CSV files through `#` header lines, JSON files
// through top-level "schema_version" and "config" members.

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "cosmic/config.hpp"
#include "cosmic/engine.hpp"

namespace cosmic {

constexpr int kSchemaVersion = 1;

/// {"schema_version": 1, "config": {...}} merged with `body`.
nlohmann::json make_document(const Settings& config, nlohmann::json body);

void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

void write_csv_preamble(std::ostream& out, const Settings& config);

/// Round-trip decimal text for a double.
std::string format_double(double v);

/// Columns: k, x_1..x_d, norm[, level]. Rows: the start point, every
/// checkpoint, and the final iterate when it is not a checkpoint.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const Settings& config,
                          bool with_level);

/// Columns: k, b_1..b_d with b = x / (1 + |x|), same rows as the trajectory.
void write_ball_map_csv(std::ostream& out, const Trajectory& traj, const Settings& config);

/// Long format (k, i, x_i) over every checkpoint.
void write_snapshot_rows_csv(std::ostream& out, const Trajectory& traj,
                             const Settings& config);

}  // namespace cosmic
