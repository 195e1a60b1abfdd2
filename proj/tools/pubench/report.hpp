#ifndef PUBENCH_REPORT_HPP
#define PUBENCH_REPORT_HPP

#include <string>
#include <vector>

#include "chebtree/tree.hpp"
#include "suites.hpp"

namespace pubench {

/// Resolves an output path: relative paths are placed under $PUBENCH_OUT_DIR
/// when that variable is set; parent directories are created.
std::string resolve_out_path(const std::string& path);

/// RFC-4180 CSV, '.' decimal separator, 17 significant digits.
void write_reports_csv(const std::string& path, const std::vector<RunReport>& rows);
void write_reports_json(const std::string& path, const std::vector<RunReport>& rows);

/// One row per leaf: leaf_id, zone lo/hi per dimension, domain lo/hi per
/// dimension. Enough to redraw the zone plots with any plotting tool.
void export_zones(const chebtree::PUFun& fun, const std::string& path);

/// Grid evaluation as CSV: one row per grid point with indices, coordinates,
/// and the blended value (17 significant digits).
void export_field(const chebtree::PUFun& fun,
                  const std::vector<std::vector<double>>& axes, const std::string& path);

std::string format_report_table(const std::vector<RunReport>& rows);

}  // namespace pubench

#endif  // PUBENCH_REPORT_HPP
