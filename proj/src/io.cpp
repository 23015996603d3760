#include "orlicz/io.hpp"

#include "orlicz/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace orlicz::io {

namespace {

std::vector<double> parse_row(const std::string& line, const std::string& path, std::size_t lineno)
{
    std::vector<double> row;
    const char* p = line.data();
    const char* end = p + line.size();
    auto is_sep = [](char c) { return c == ',' || c == ' ' || c == '\t' || c == '\r' || c == ';'; };
    while (p < end) {
        while (p < end && is_sep(*p)) ++p;
        if (p >= end) break;
        if (*p == '+') ++p;
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(p, end, v);
        if (ec != std::errc() || (ptr < end && !is_sep(*ptr)))
            fail(ErrorKind::Io, path + ":" + std::to_string(lineno) + ": cannot parse number");
        row.push_back(v);
        p = ptr;
    }
    return row;
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string join(std::span<const double> row)
{
    std::string s;
    for (std::size_t k = 0; k < row.size(); ++k) {
        if (k) s += ',';
        s += fmt(row[k]);
    }
    return s;
}

}  // namespace

std::vector<std::vector<double>> read_table(const std::string& path)
{
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Io, "cannot open '" + path + "'");
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        auto row = parse_row(line, path, lineno);
        if (!rows.empty() && row.size() != rows.front().size())
            fail(ErrorKind::Io, path + ":" + std::to_string(lineno) + ": expected " +
                                    std::to_string(rows.front().size()) + " columns");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) fail(ErrorKind::Io, "'" + path + "' has no data rows");
    if (rows.front().size() < 2) fail(ErrorKind::Io, "'" + path + "' needs at least weight and value columns");
    return rows;
}

DensityField read_density(const std::string& path)
{
    const auto rows = read_table(path);
    const std::size_t dim = rows.front().size() - 2;
    std::vector<double> coords, weights, values;
    coords.reserve(rows.size() * dim);
    for (const auto& r : rows) {
        coords.insert(coords.end(), r.begin(), r.begin() + static_cast<std::ptrdiff_t>(dim));
        weights.push_back(r[dim]);
        values.push_back(r[dim + 1]);
    }
    auto space = std::make_shared<const MeasureSpace>(dim, std::move(coords), std::move(weights));
    return DensityField(std::move(space), std::move(values));
}

void write_density(const std::string& path, const DensityField& f)
{
    const MeasureSpace& s = *f.space();
    std::ostringstream os;
    os << "# " << describe(s.tag()) << ", " << s.size() << " points\n";
    std::vector<double> row;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto pt = s.point(i);
        row.assign(pt.begin(), pt.end());
        row.push_back(s.weights()[i]);
        row.push_back(f[i]);
        os << join(row) << '\n';
    }
    write_text(path, os.str());
}

StarBodyGrid read_body(const std::string& path)
{
    const auto rows = read_table(path);
    const std::size_t cols = rows.front().size();
    if (cols != 4 && cols != 5) fail(ErrorKind::Io, "'" + path + "': body rows need 2 or 3 coordinates, weight, radius");
    const int n = static_cast<int>(cols - 2);
    std::vector<double> nodes, weights, radial;
    for (const auto& r : rows) {
        nodes.insert(nodes.end(), r.begin(), r.begin() + n);
        weights.push_back(r[cols - 2]);
        radial.push_back(r[cols - 1]);
    }
    auto grid = std::make_shared<const SphereGrid>(n, std::move(nodes), std::move(weights));
    return StarBodyGrid(std::move(grid), std::move(radial));
}

void write_body(const std::string& path, const StarBodyGrid& k)
{
    std::ostringstream os;
    os << "# star body in R^" << k.dim() << ", " << k.size() << " nodes\n";
    std::vector<double> row;
    for (std::size_t i = 0; i < k.size(); ++i) {
        const auto u = k.grid()->node(i);
        row.assign(u.begin(), u.end());
        row.push_back(k.grid()->weights()[i]);
        row.push_back(k[i]);
        os << join(row) << '\n';
    }
    write_text(path, os.str());
}

EuclideanField read_euclidean(const std::string& path)
{
    const auto rows = read_table(path);
    const std::size_t cols = rows.front().size();
    if (cols != 3 && cols != 4) fail(ErrorKind::Io, "'" + path + "': grid rows need 1 or 2 coordinates, weight, value");
    const int n = static_cast<int>(cols - 2);
    std::size_t res = rows.size();
    if (n == 2) {
        res = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(rows.size()))));
        if (res * res != rows.size()) fail(ErrorKind::Io, "'" + path + "': row count is not a square");
    }
    double half = 0.0;
    for (const auto& r : rows)
        for (int d = 0; d < n; ++d) half = std::max(half, std::abs(r[static_cast<std::size_t>(d)]));
    std::vector<double> values;
    values.reserve(rows.size());
    for (const auto& r : rows) values.push_back(r[cols - 1]);
    EuclideanField p(n, half, res, std::move(values));
    const auto expected = p.coords();
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int d = 0; d < n; ++d)
            if (std::abs(rows[i][static_cast<std::size_t>(d)] - expected[i * static_cast<std::size_t>(n) + static_cast<std::size_t>(d)]) >
                1e-9 * half)
                fail(ErrorKind::Io, "'" + path + "': row " + std::to_string(i + 1) +
                                        " is not on a symmetric row-major tensor grid");
    return p;
}

void write_euclidean(const std::string& path, const EuclideanField& p)
{
    const auto coords = p.coords();
    const auto weights = p.weights();
    const auto n = static_cast<std::size_t>(p.dim());
    std::ostringstream os;
    os << "# grid on [-" << fmt(p.half_width()) << ", " << fmt(p.half_width()) << "]^" << n << ", "
       << p.resolution() << " nodes per axis\n";
    std::vector<double> row;
    for (std::size_t i = 0; i < p.size(); ++i) {
        row.assign(coords.begin() + static_cast<std::ptrdiff_t>(i * n),
                   coords.begin() + static_cast<std::ptrdiff_t>((i + 1) * n));
        row.push_back(weights[i]);
        row.push_back(p[i]);
        os << join(row) << '\n';
    }
    write_text(path, os.str());
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Io, "cannot write '" + path + "'");
    out << text;
    if (!out) fail(ErrorKind::Io, "write to '" + path + "' failed");
}

}  // namespace orlicz::io
