#include "report.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "chebtree/fun.hpp"

namespace pubench {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// RFC 4180: quote fields containing commas, quotes, or line breaks.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw chebtree::Error("cannot open output file: " + path);
  return out;
}

}  // namespace

std::string resolve_out_path(const std::string& path) {
  namespace fs = std::filesystem;
  fs::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("PUBENCH_OUT_DIR")) p = fs::path(dir) / p;
  }
  if (p.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
  }
  return p.string();
}

void write_reports_csv(const std::string& path, const std::vector<RunReport>& rows) {
  auto out = open_out(path);
  out << "function,params,build_time_s,eval_time_s,max_error,stored_points,leaf_count,"
         "tree_depth,warmup_build_time_s,status\r\n";
  for (const auto& r : rows) {
    out << csv_field(r.function) << ',' << csv_field(r.params_echo) << ','
        << fmt17(r.build_time_s) << ',' << fmt17(r.eval_time_s) << ',' << fmt17(r.max_error)
        << ',' << r.stored_points << ',' << r.leaf_count << ',' << r.tree_depth << ','
        << fmt17(r.warmup_build_time_s) << ',' << csv_field(r.status) << "\r\n";
  }
}

void write_reports_json(const std::string& path, const std::vector<RunReport>& rows) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& r : rows) {
    doc.push_back({{"function", r.function},
                   {"params", r.params_echo},
                   {"build_time_s", r.build_time_s},
                   {"eval_time_s", r.eval_time_s},
                   {"max_error", r.max_error},
                   {"stored_points", r.stored_points},
                   {"leaf_count", r.leaf_count},
                   {"tree_depth", r.tree_depth},
                   {"warmup_build_time_s", r.warmup_build_time_s},
                   {"status", r.status}});
  }
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
}

void export_zones(const chebtree::PUFun& fun, const std::string& path) {
  auto out = open_out(path);
  const std::size_t d = fun.dim();
  out << "leaf_id";
  for (std::size_t j = 0; j < d; ++j)
    out << ",zone_lo_" << (j + 1) << ",zone_hi_" << (j + 1);
  for (std::size_t j = 0; j < d; ++j)
    out << ",domain_lo_" << (j + 1) << ",domain_hi_" << (j + 1);
  out << "\r\n";
  std::size_t id = 0;
  for (const chebtree::TreeNode* leaf : fun.leaves()) {
    out << id++;
    for (std::size_t j = 0; j < d; ++j)
      out << ',' << fmt17(leaf->zone[j].lo) << ',' << fmt17(leaf->zone[j].hi);
    for (std::size_t j = 0; j < d; ++j)
      out << ',' << fmt17(leaf->domain[j].lo) << ',' << fmt17(leaf->domain[j].hi);
    out << "\r\n";
  }
}

void export_field(const chebtree::PUFun& fun, const std::vector<std::vector<double>>& axes,
                  const std::string& path) {
  const chebtree::NdArray values = fun.eval_grid(axes);
  auto out = open_out(path);
  const std::size_t d = axes.size();
  for (std::size_t j = 0; j < d; ++j) out << 'i' << (j + 1) << ',';
  for (std::size_t j = 0; j < d; ++j) out << 'x' << (j + 1) << ',';
  out << "s\r\n";
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    for (std::size_t j = 0; j < d; ++j) out << idx[j] << ',';
    for (std::size_t j = 0; j < d; ++j) out << fmt17(axes[j][idx[j]]) << ',';
    out << fmt17(values[flat]) << "\r\n";
    for (std::size_t j = d; j-- > 0;) {
      if (++idx[j] < values.shape()[j]) break;
      idx[j] = 0;
    }
  }
}

std::string format_report_table(const std::vector<RunReport>& rows) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%-24s %-12s %-12s %-12s %10s %8s %6s  %s\n", "function",
                "build_s", "eval_s", "max_error", "points", "leaves", "depth", "status");
  out << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof(line), "%-24s %-12.4g %-12.4g %-12.4g %10zu %8zu %6zu  %s\n",
                  r.function.c_str(), r.build_time_s, r.eval_time_s, r.max_error,
                  r.stored_points, r.leaf_count, r.tree_depth, r.status.c_str());
    out << line;
  }
  return out.str();
}

}  // namespace pubench
