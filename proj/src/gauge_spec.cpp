#include "orlicz/gauge_spec.hpp"

#include "orlicz/error.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace orlicz {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double to_number(const std::string& key, const std::string& text)
{
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        fail(ErrorKind::InvalidParameter, "gauge parameter '" + key + "' is not a number: '" + text + "'");
    return v;
}

}  // namespace

double GaugeSpec::number(const std::string& key) const
{
    const auto it = params.find(key);
    if (it == params.end()) fail(ErrorKind::InvalidParameter, "gauge '" + name + "' needs parameter '" + key + "'");
    return to_number(key, it->second);
}

double GaugeSpec::number_or(const std::string& key, double fallback) const
{
    return params.count(key) ? number(key) : fallback;
}

std::string GaugeSpec::text_or(const std::string& key, const std::string& fallback) const
{
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

std::string GaugeSpec::canonical() const
{
    std::ostringstream os;
    os << name;
    bool first = true;
    for (const auto& [k, v] : params) {
        os << (first ? ":" : ",") << k << "=" << v;
        first = false;
    }
    return os.str();
}

GaugeSpec parse_gauge_spec(const std::string& text)
{
    const std::string s = trim(text);
    require(!s.empty(), ErrorKind::InvalidParameter, "empty gauge specification");
    GaugeSpec spec;
    std::string rest;
    const auto colon = s.find(':');
    const auto eq = s.find('=');
    if (colon != std::string::npos && (eq == std::string::npos || colon < eq)) {
        spec.name = trim(s.substr(0, colon));
        rest = s.substr(colon + 1);
    } else if (eq != std::string::npos) {
        rest = s;
    } else {
        spec.name = s;
    }
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto p = item.find('=');
        require(p != std::string::npos, ErrorKind::InvalidParameter, "gauge parameter '" + item + "' needs key=value");
        const std::string key = trim(item.substr(0, p));
        const std::string value = trim(item.substr(p + 1));
        if (key == "kind" || key == "name") spec.name = value;
        else spec.params[key] = value;
    }
    require(!spec.name.empty(), ErrorKind::InvalidParameter, "gauge specification '" + text + "' has no name");
    return spec;
}

UnivariateGauge make_univariate(const GaugeSpec& spec)
{
    const std::string& n = spec.name;
    if (n == "id" || n == "identity") return gauges::identity();
    if (n == "sqrt") return gauges::square_root();
    if (n == "square") return gauges::square();
    if (n == "inv") return gauges::inverse();
    if (n == "inv_square") return gauges::power(-2.0);
    if (n == "power") return gauges::power(spec.number("alpha"));
    fail(ErrorKind::InvalidParameter, "unknown univariate gauge '" + n + "'");
}

MonotoneCompositor make_compositor(const GaugeSpec& spec)
{
    const std::string& n = spec.name;
    if (n == "power_sum") {
        const double m = spec.number_or("m", 2.0);
        require(m >= 1.0 && m == std::floor(m), ErrorKind::InvalidParameter, "power_sum needs an integer m >= 1");
        return make_power_sum(spec.number("p"), static_cast<std::size_t>(m));
    }
    if (n == "linear_combo") {
        const UnivariateGauge g1 = make_univariate(parse_gauge_spec(spec.text_or("g1", "id")));
        const UnivariateGauge g2 = make_univariate(parse_gauge_spec(spec.text_or("g2", "id")));
        return make_linear_combo(g1, g2, spec.number_or("a1", 1.0), spec.number_or("a2", 1.0));
    }
    return make_univariate(spec).compositor();
}

SurfaceGauge make_surface(const GaugeSpec& spec)
{
    const std::string& n = spec.name;
    if (n == "exp_neg") return gauges::exp_neg();
    if (n == "inv") return gauges::surface_inverse();
    if (n == "power") return gauges::surface_power(spec.number("alpha"));
    if (n == "sqrt") return gauges::surface_sqrt();
    if (n == "t_over_1pt") return gauges::t_over_one_plus_t();
    if (n == "log1p") return gauges::log_one_plus();
    if (n == "constant") return gauges::constant(spec.number_or("alpha", 1.0));
    if (n == "square") return gauges::surface_power(2.0);
    fail(ErrorKind::InvalidParameter, "unknown surface gauge '" + n + "'");
}

ScalarGauge make_scalar(const GaugeSpec& spec)
{
    const std::string& n = spec.name;
    if (n == "kl") return gauges::kl();
    if (n == "chi2") return gauges::chi_square();
    if (n == "tv") return gauges::total_variation();
    if (n == "hellinger") return gauges::hellinger();
    if (n == "renyi") return gauges::renyi(spec.number("alpha"));
    return make_univariate(spec).scalar();
}

}  // namespace orlicz
