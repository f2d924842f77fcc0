#include "cosmic/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cosmic {

namespace {

struct Row {
  std::size_t k;
  const Vec* x;
  double level;
};

std::vector<Row> trajectory_rows(const Trajectory& traj) {
  const double nan = std::nan("");
  std::vector<Row> rows;
  if (traj.checkpoints.empty() || traj.checkpoints.front().k != 0) {
    rows.push_back({0, &traj.start, nan});
  }
  for (const auto& c : traj.checkpoints) rows.push_back({c.k, &c.x, c.level});
  if (traj.steps > 0 && rows.back().k != traj.steps) {
    rows.push_back({traj.steps, &traj.tail_last, nan});
  }
  return rows;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

nlohmann::json make_document(const Settings& config, nlohmann::json body) {
  nlohmann::json doc = {{"schema_version", kSchemaVersion}, {"config", config}};
  for (auto& [key, value] : body.items()) doc[key] = std::move(value);
  return doc;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

void write_csv_preamble(std::ostream& out, const Settings& config) {
  out << "# schema_version=" << kSchemaVersion << '\n';
  for (const auto& [key, value] : config) out << "# config " << key << '=' << value << '\n';
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const Settings& config,
                          bool with_level) {
  write_csv_preamble(out, config);
  out << 'k';
  for (std::size_t i = 1; i <= traj.start.size(); ++i) out << ",x_" << i;
  out << ",norm";
  if (with_level) out << ",level";
  out << '\n';
  for (const auto& row : trajectory_rows(traj)) {
    out << row.k;
    for (double v : *row.x) out << ',' << format_double(v);
    out << ',' << format_double(norm(*row.x));
    if (with_level) out << ',' << (std::isnan(row.level) ? "" : format_double(row.level));
    out << '\n';
  }
}

void write_ball_map_csv(std::ostream& out, const Trajectory& traj, const Settings& config) {
  write_csv_preamble(out, config);
  out << 'k';
  for (std::size_t i = 1; i <= traj.start.size(); ++i) out << ",b_" << i;
  out << '\n';
  for (const auto& row : trajectory_rows(traj)) {
    out << row.k;
    for (double v : ball_map(*row.x)) out << ',' << format_double(v);
    out << '\n';
  }
}

void write_snapshot_rows_csv(std::ostream& out, const Trajectory& traj,
                             const Settings& config) {
  write_csv_preamble(out, config);
  out << "k,i,x_i\n";
  for (const auto& c : traj.checkpoints) {
    for (std::size_t i = 0; i < c.x.size(); ++i) {
      out << c.k << ',' << (i + 1) << ',' << format_double(c.x[i]) << '\n';
    }
  }
}

}  // namespace cosmic
