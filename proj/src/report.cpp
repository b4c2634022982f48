#include "rfsim/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "rfsim/io_util.hpp"

namespace rfsim::report {

namespace {

using Rows = std::vector<std::pair<std::string, eval::FidelityReport>>;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (const char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

const char* series_color(size_t i) {
    static const char* kColors[] = {"#4878d0", "#ee854a", "#6acc64", "#d65f5f",
                                    "#956cb4", "#8c613c", "#dc7ec0", "#797979"};
    return kColors[i % (sizeof(kColors) / sizeof(kColors[0]))];
}

void check_rows(const Rows& rows) {
    if (rows.empty()) throw std::invalid_argument("report rendering: no reports given");
    for (const auto& [label, rep] : rows) {
        if (rep.station_ids != rows.front().second.station_ids) {
            throw std::invalid_argument("report rendering: station sets differ between reports");
        }
    }
}

struct Canvas {
    std::ostringstream out;
    double width, height;

    Canvas(double w, double h, const std::string& provenance) : width(w), height(h) {
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
            << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
        if (!provenance.empty()) out << "<!-- " << xml_escape(provenance) << " -->\n";
        out << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
    }

    void line(double x1, double y1, double x2, double y2, const char* color = "#333333") {
        out << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2)
            << "\" y2=\"" << num(y2) << "\" stroke=\"" << color << "\" stroke-width=\"1\"/>\n";
    }

    void rect(double x, double y, double w, double h, const std::string& fill) {
        out << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w)
            << "\" height=\"" << num(h) << "\" fill=\"" << fill << "\"/>\n";
    }

    void text(double x, double y, const std::string& s, const char* anchor = "middle",
              int size = 11) {
        out << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-family=\"sans-serif\""
            << " font-size=\"" << size << "\" text-anchor=\"" << anchor << "\">" << xml_escape(s)
            << "</text>\n";
    }

    void polyline(const std::vector<std::pair<double, double>>& pts, const char* color) {
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (const auto& [x, y] : pts) out << num(x) << ',' << num(y) << ' ';
        out << "\"/>\n";
    }

    std::string finish() {
        out << "</svg>\n";
        return out.str();
    }
};

}  // namespace

std::string render_table_csv(const Rows& rows, const std::string& provenance) {
    check_rows(rows);
    const auto& stations = rows.front().second.station_ids;

    std::ostringstream out;
    if (!provenance.empty()) out << "# " << provenance << "\n";
    out << "config";
    for (const auto& id : stations) out << ',' << io::csv_escape("spearman " + id);
    for (const auto sc : eval::kAllScenarios) {
        out << ',' << io::csv_escape("knn " + eval::scenario_name(sc) + " [m]");
    }
    out << '\n';

    for (const auto& [label, rep] : rows) {
        out << io::csv_escape(label);
        for (const auto& id : stations) {
            const auto& r = rep.per_station_spearman.at(id);
            out << ',';
            if (r.rho.has_value()) {
                out << num(*r.rho);
            } else {
                out << "UNDEFINED(" << eval::spearman_status_name(r.status) << ')';
            }
        }
        for (const auto sc : eval::kAllScenarios) out << ',' << num(rep.knn_mean_error_m.at(sc));
        out << '\n';
    }
    return out.str();
}

std::string render_spearman_svg(const Rows& rows, const std::string& title,
                                const std::string& provenance) {
    check_rows(rows);
    const auto& stations = rows.front().second.station_ids;
    const size_t n_groups = stations.size();
    const size_t n_series = rows.size();

    const double margin_left = 50, margin_right = 20, margin_top = 40, margin_bottom = 60;
    const double plot_w = std::max(320.0, 80.0 * static_cast<double>(n_groups));
    const double plot_h = 300;
    Canvas canvas(margin_left + plot_w + margin_right, margin_top + plot_h + margin_bottom,
                  provenance);

    // Fixed rho range [-1, 1] with a zero baseline.
    auto y_of = [&](double rho) { return margin_top + (1.0 - rho) * plot_h / 2.0; };
    canvas.text(canvas.width / 2, 20, title, "middle", 13);
    canvas.line(margin_left, margin_top, margin_left, margin_top + plot_h);
    for (const double tick : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
        canvas.line(margin_left - 4, y_of(tick), margin_left, y_of(tick));
        canvas.text(margin_left - 8, y_of(tick) + 4, num(tick), "end", 10);
    }
    canvas.line(margin_left, y_of(0.0), margin_left + plot_w, y_of(0.0));

    const double group_w = plot_w / static_cast<double>(n_groups);
    const double bar_w = group_w * 0.8 / static_cast<double>(n_series);
    for (size_t g = 0; g < n_groups; ++g) {
        const double gx = margin_left + group_w * static_cast<double>(g);
        canvas.text(gx + group_w / 2, margin_top + plot_h + 16, stations[g], "middle", 10);
        for (size_t s = 0; s < n_series; ++s) {
            const auto& r = rows[s].second.per_station_spearman.at(stations[g]);
            if (!r.rho.has_value()) continue;
            const double rho = *r.rho;
            const double x = gx + group_w * 0.1 + bar_w * static_cast<double>(s);
            const double y0 = y_of(std::max(rho, 0.0));
            const double h = std::fabs(rho) * plot_h / 2.0;
            canvas.rect(x, y0, bar_w, h, series_color(s));
        }
    }

    // Legend.
    double lx = margin_left;
    const double ly = margin_top + plot_h + 36;
    for (size_t s = 0; s < n_series; ++s) {
        canvas.rect(lx, ly - 9, 10, 10, series_color(s));
        canvas.text(lx + 14, ly, rows[s].first, "start", 10);
        lx += 20 + 7.0 * static_cast<double>(rows[s].first.size());
    }
    return canvas.finish();
}

std::string render_knn_svg(const Rows& rows, const std::string& title,
                           const std::string& provenance) {
    check_rows(rows);
    const double margin_left = 60, margin_right = 100, margin_top = 40, margin_bottom = 50;
    const double plot_w = std::max(320.0, 90.0 * static_cast<double>(rows.size()));
    const double plot_h = 300;
    Canvas canvas(margin_left + plot_w + margin_right, margin_top + plot_h + margin_bottom,
                  provenance);
    canvas.text(canvas.width / 2, 20, title, "middle", 13);

    double max_err = 0.0;
    for (const auto& [label, rep] : rows) {
        for (const auto sc : eval::kAllScenarios) {
            max_err = std::max(max_err, rep.knn_mean_error_m.at(sc));
        }
    }
    if (max_err <= 0.0) max_err = 1.0;

    auto y_of = [&](double err) { return margin_top + plot_h * (1.0 - err / (max_err * 1.05)); };
    auto x_of = [&](size_t i) {
        if (rows.size() == 1) return margin_left + plot_w / 2;
        return margin_left + plot_w * static_cast<double>(i) / static_cast<double>(rows.size() - 1);
    };

    canvas.line(margin_left, margin_top, margin_left, margin_top + plot_h);
    canvas.line(margin_left, margin_top + plot_h, margin_left + plot_w, margin_top + plot_h);
    for (int tick = 0; tick <= 4; ++tick) {
        const double err = max_err * 1.05 * tick / 4.0;
        canvas.line(margin_left - 4, y_of(err), margin_left, y_of(err));
        canvas.text(margin_left - 8, y_of(err) + 4, num(err), "end", 10);
    }
    for (size_t i = 0; i < rows.size(); ++i) {
        canvas.text(x_of(i), margin_top + plot_h + 16, rows[i].first, "middle", 10);
    }

    size_t series = 0;
    for (const auto sc : eval::kAllScenarios) {
        std::vector<std::pair<double, double>> pts;
        for (size_t i = 0; i < rows.size(); ++i) {
            pts.emplace_back(x_of(i), y_of(rows[i].second.knn_mean_error_m.at(sc)));
        }
        canvas.polyline(pts, series_color(series));
        for (const auto& [x, y] : pts) {
            canvas.rect(x - 2, y - 2, 4, 4, series_color(series));
        }
        canvas.text(margin_left + plot_w + 10, margin_top + 14 * static_cast<double>(series) + 10,
                    eval::scenario_name(sc), "start", 10);
        canvas.rect(margin_left + plot_w + 60, margin_top + 14 * static_cast<double>(series) + 2,
                    10, 10, series_color(series));
        ++series;
    }
    return canvas.finish();
}

}  // namespace rfsim::report
