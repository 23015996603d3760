#include "orlicz/error.hpp"
#include "orlicz/io.hpp"
#include "orlicz/random.hpp"

#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>

using namespace orlicz;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / "orlicz_io_test";
    fs::create_directories(dir);
    return dir / name;
}

void write_file(const fs::path& p, const std::string& text)
{
    std::ofstream(p) << text;
}

bool same(std::span<const double> a, std::span<const double> b)
{
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("tables accept commas, whitespace, semicolons and comments")
{
    const auto p = scratch("table.txt");
    write_file(p, "# header\n1, 2, 3\n\n4 5 6\n7;8;9\n");
    const auto t = io::read_table(p.string());
    REQUIRE(t.size() == 3);
    CHECK(t[1][1] == 5.0);
    CHECK(t[2][2] == 9.0);
    write_file(p, "1,2\n3\n");
    CHECK_THROWS_AS(io::read_table(p.string()), Error);
    write_file(p, "1,x\n");
    CHECK_THROWS_AS(io::read_table(p.string()), Error);
    CHECK_THROWS_AS(io::read_table("/nonexistent/table.txt"), Error);
}

TEST_CASE("densities round-trip exactly")
{
    random::Rng rng(81);
    const SpacePtr s = random::random_space(rng, 37);
    const DensityField f = random::random_field(rng, s);
    const auto p = scratch("density.csv");
    io::write_density(p.string(), f);
    const DensityField g = io::read_density(p.string());
    CHECK(same(f.values(), g.values()));
    CHECK(same(f.space()->weights(), g.space()->weights()));
}

TEST_CASE("star bodies round-trip exactly")
{
    random::Rng rng(82);
    for (int n : {2, 3}) {
        const auto k = random::random_star_body(rng, sphere_grid(n, 16));
        const auto p = scratch("body.csv");
        io::write_body(p.string(), k);
        const auto l = io::read_body(p.string());
        CHECK(l.dim() == n);
        CHECK(same(k.radial(), l.radial()));
        CHECK(same(k.grid()->weights(), l.grid()->weights()));
    }
}

TEST_CASE("Euclidean fields round-trip exactly")
{
    random::Rng rng(83);
    const auto f1 = random::random_log_concave_1d(rng, 101);
    const auto f2 = EuclideanField::from_function(2, 3.0, 21, [](std::span<const double> x) {
        return std::exp(-x[0] * x[0] - 0.3 * x[1] * x[1]);
    });
    for (const auto& f : {f1, f2}) {
        const auto p = scratch("field.csv");
        io::write_euclidean(p.string(), f);
        const auto g = io::read_euclidean(p.string());
        CHECK(g.dim() == f.dim());
        CHECK(g.resolution() == f.resolution());
        CHECK(g.half_width() == f.half_width());
        CHECK(same(f.values(), g.values()));
    }
    const auto p = scratch("bad_field.csv");
    write_file(p, "0,1,1\n0.5,1,1\n2,1,1\n-1,1,1\n-2,1,1\n-0.5,1,1\n");
    CHECK_THROWS_AS(io::read_euclidean(p.string()), Error);
}
