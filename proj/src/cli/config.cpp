#include "orlicz/cli.hpp"

#include "orlicz/error.hpp"
#include "orlicz/gauge_spec.hpp"
#include "orlicz/io.hpp"
#include "orlicz/random.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <sstream>

namespace orlicz::cli {

namespace {

double to_real(const std::string& text)
{
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last)
        fail(ErrorKind::InvalidParameter, "not a number: '" + text + "'");
    return v;
}

std::vector<double> split_reals(const std::string& text, char sep)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        const auto b = item.find_first_not_of(" \t");
        require(b != std::string::npos, ErrorKind::InvalidParameter, "empty entry in '" + text + "'");
        const auto e = item.find_last_not_of(" \t");
        out.push_back(to_real(item.substr(b, e - b + 1)));
    }
    return out;
}

void require_file(const std::string& path)
{
    if (!std::filesystem::is_regular_file(path)) fail(ErrorKind::Io, "no such file: '" + path + "'");
}

}  // namespace

std::vector<double> parse_real_list(const std::string& text)
{
    auto v = split_reals(text, ',');
    require(!v.empty(), ErrorKind::InvalidParameter, "empty list of numbers");
    return v;
}

TargetSpec parse_target(const std::string& text)
{
    TargetSpec spec;
    spec.text = text;
    if (text.rfind("file:", 0) == 0) {
        spec.kind = TargetSpec::Kind::File;
        spec.path = text.substr(5);
        require(!spec.path.empty(), ErrorKind::InvalidParameter, "file target needs a path");
        require_file(spec.path);
        return spec;
    }
    const GaugeSpec g = parse_gauge_spec(text);
    require(g.name == "gaussian", ErrorKind::InvalidParameter,
            "target must be gaussian:... or file:<path>, got '" + text + "'");
    for (const auto& [key, value] : g.params)
        require(key == "c" || key == "n" || key == "diag" || key == "full", ErrorKind::InvalidParameter,
                "unknown gaussian target parameter '" + key + "'");
    if (g.params.count("diag")) {
        const auto d = split_reals(g.params.at("diag"), ';');
        require(!d.empty(), ErrorKind::InvalidParameter, "diag target needs entries");
        Eigen::VectorXd v(static_cast<Eigen::Index>(d.size()));
        for (std::size_t k = 0; k < d.size(); ++k) v(static_cast<Eigen::Index>(k)) = d[k];
        spec.gaussian = GaussianFamilyPoint::diagonal(v);
    } else if (g.params.count("full")) {
        const auto e = split_reals(g.params.at("full"), ';');
        const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(e.size()))));
        require(n >= 1 && n * n == e.size(), ErrorKind::InvalidParameter, "full target needs n*n entries");
        Eigen::MatrixXd c(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t k = 0; k < n; ++k) c(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = e[r * n + k];
        spec.gaussian = GaussianFamilyPoint::full(c);
    } else {
        const double n = g.number_or("n", 1.0);
        require(n >= 1.0 && n == std::floor(n) && n <= 8.0, ErrorKind::InvalidParameter,
                "gaussian target dimension must be an integer in [1, 8]");
        spec.gaussian = GaussianFamilyPoint::scaled(static_cast<int>(n), g.number_or("c", 1.0));
    }
    return spec;
}

SurfaceTarget load_target(const TargetSpec& spec, std::size_t resolution)
{
    if (spec.kind == TargetSpec::Kind::File) return SurfaceTarget::grid(io::read_euclidean(spec.path));
    return SurfaceTarget::gaussian(*spec.gaussian, resolution);
}

std::vector<DensityField> load_fields(const std::vector<std::string>& paths, std::size_t count, std::size_t n,
                                      std::uint64_t seed)
{
    std::vector<DensityField> fields;
    if (!paths.empty()) {
        for (const auto& p : paths) require_file(p);
        for (const auto& p : paths) {
            DensityField f = io::read_density(p);
            if (!fields.empty()) {
                require(f.space()->same_as(*fields.front().space()), ErrorKind::InvalidParameter,
                        "'" + p + "' is not on the same points and weights as the first field");
                f = DensityField(fields.front().space(), {f.values().begin(), f.values().end()});
            }
            fields.push_back(std::move(f));
        }
        return fields;
    }
    require(n >= 1, ErrorKind::InvalidParameter, "random fields need at least one point");
    random::Rng rng(seed);
    const SpacePtr space = random::random_space(rng, n);
    for (std::size_t j = 0; j < count; ++j) fields.push_back(random::random_field(rng, space));
    return fields;
}

std::vector<StarBodyGrid> load_bodies(const std::vector<std::string>& paths, std::size_t count, int dim,
                                      std::size_t resolution, std::uint64_t seed)
{
    std::vector<StarBodyGrid> bodies;
    if (!paths.empty()) {
        for (const auto& p : paths) require_file(p);
        for (const auto& p : paths) {
            StarBodyGrid k = io::read_body(p);
            if (!bodies.empty()) {
                require(k.grid()->space()->same_as(*bodies.front().grid()->space()), ErrorKind::InvalidParameter,
                        "'" + p + "' is not on the same sphere grid as the first body");
                k = StarBodyGrid(bodies.front().grid(), {k.radial().begin(), k.radial().end()});
            }
            bodies.push_back(std::move(k));
        }
        return bodies;
    }
    random::Rng rng(seed);
    const GridPtr grid = sphere_grid(dim, resolution);
    for (std::size_t j = 0; j < count; ++j) bodies.push_back(random::random_star_body(rng, grid));
    return bodies;
}

}  // namespace orlicz::cli
