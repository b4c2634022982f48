#ifndef RFSIM_REPORT_HPP
#define RFSIM_REPORT_HPP

#include <string>
#include <utility>
#include <vector>

#include "rfsim/evaluation.hpp"
#include "rfsim/optimizer.hpp"

namespace rfsim::report {

/// Table-style CSV: one labeled row per report, a column per station plus
/// the four kNN scenario errors.
std::string render_table_csv(const std::vector<std::pair<std::string, eval::FidelityReport>>& rows,
                             const std::string& provenance = {});

/// Grouped bar chart of per-station Spearman, one series per report row.
std::string render_spearman_svg(
    const std::vector<std::pair<std::string, eval::FidelityReport>>& rows,
    const std::string& title, const std::string& provenance = {});

/// kNN mean error per scenario; one polyline per scenario across the rows.
std::string render_knn_svg(const std::vector<std::pair<std::string, eval::FidelityReport>>& rows,
                           const std::string& title, const std::string& provenance = {});

}  // namespace rfsim::report

#endif  // RFSIM_REPORT_HPP
