#include "orlicz/cli.hpp"

#include "orlicz/error.hpp"
#include "orlicz/io.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>

namespace orlicz::cli {

namespace {

Json real(double v)
{
    if (std::isfinite(v)) return v;
    return nullptr;
}

std::string csv_cell(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

}  // namespace

std::string format_real(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Json report_header(const std::string& command, std::uint64_t seed, const Json& tolerances, const Json& resolutions,
                   const Json& gauges)
{
    Json j;
    j["tool"] = "orlicz";
    j["version"] = ORLICZ_VERSION;
    j["command"] = command;
    j["seed"] = seed;
    j["tolerances"] = tolerances;
    j["resolutions"] = resolutions;
    j["gauges"] = gauges;
    return j;
}

Json to_json(const InequalityReport& r)
{
    return Json{{"lhs", real(r.lhs)},
                {"rhs", real(r.rhs)},
                {"direction", to_string(r.direction)},
                {"margin", real(r.margin)},
                {"holds", r.holds},
                {"equality", r.equality},
                {"equality_expected", r.equality_expected},
                {"seed", r.seed}};
}

Json to_json(const DivergenceResult& r)
{
    return Json{{"value", real(r.value)},
                {"bound", real(r.bound)},
                {"margin", real(r.equality_gap)},
                {"integrand_min", real(r.integrand_min)},
                {"integrand_max", real(r.integrand_max)}};
}

Json to_json(const VariationEstimate& r)
{
    Json eps = Json::array(), fd = Json::array();
    for (double e : r.epsilons) eps.push_back(real(e));
    for (double v : r.fd_values) fd.push_back(real(v));
    return Json{{"branch", to_string(r.branch)},
                {"derivative", real(r.derivative)},
                {"epsilons", eps},
                {"quotients", fd},
                {"extrapolated", real(r.extrapolated)},
                {"exact", real(r.exact_rhs)},
                {"relative_error", real(r.relative_error)},
                {"observed_order", real(r.observed_order)},
                {"sign_mismatch", r.sign_mismatch},
                {"sandwich_ok", r.sandwich_ok},
                {"ratio_sup", real(r.ratios.sup)},
                {"ratio_inf", real(r.ratios.inf)},
                {"ratio_unbounded", r.ratios.unbounded}};
}

Json to_json(const SurfaceAreaResult& r)
{
    Json nested = Json::array();
    for (const auto& f : r.nested) nested.push_back(Json{{"family", to_string(f.family)}, {"value", real(f.value)}});
    Json j{{"value", real(r.value)},
           {"objective", r.minimizes ? "inf" : "sup"},
           {"family", to_string(r.family)},
           {"argopt", r.argopt},
           {"best_is_target", r.best_is_target},
           {"nested", nested},
           {"lower_bound", real(r.lower_bound)},
           {"upper_bound", r.upper_bound ? real(*r.upper_bound) : Json(nullptr)},
           {"class_d_bound", r.class_d_bound ? real(*r.class_d_bound) : Json(nullptr)},
           {"c1", real(r.c1)},
           {"target_in_d", r.target_in_d},
           {"target_margin", real(r.target_margin)},
           {"target_log_concave", r.target_log_concave},
           {"polar_truncated", r.polar_truncated},
           {"target_off_center", r.target_off_center},
           {"evaluations", r.evaluations}};
    return j;
}

Json to_json(const ClassDReport& r)
{
    Json bary = Json::array();
    for (double b : r.barycenter) bary.push_back(real(b));
    return Json{{"in_class", r.in_class},     {"mass", real(r.mass)},
                {"polar_mass", real(r.polar_mass)}, {"product", real(r.product)},
                {"bound", real(r.bound)},     {"margin", real(r.margin)},
                {"truncated", r.truncated},   {"barycenter", bary},
                {"off_center", r.off_center}};
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add(std::vector<std::string> cells)
{
    require(cells.size() == header_.size(), ErrorKind::InvalidParameter, "csv row width does not match header");
    rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const
{
    std::string s;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t k = 0; k < cells.size(); ++k) {
            if (k) s += ',';
            s += csv_cell(cells[k]);
        }
        s += '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return s;
}

void emit(const std::string& out, const Json& report, const CsvTable* csv)
{
    const std::string text = report.dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
        return;
    }
    io::write_text(out + ".json", text);
    if (csv) io::write_text(out + ".csv", csv->str());
}

}  // namespace orlicz::cli
