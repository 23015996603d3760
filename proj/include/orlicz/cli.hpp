#pragma once

#include "orlicz/affine.hpp"
#include "orlicz/divergence.hpp"
#include "orlicz/measure.hpp"
#include "orlicz/star.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace orlicz::cli {

using Json = nlohmann::ordered_json;

/// Exit statuses of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitUsage = 2;

/// Options shared by every subcommand.
struct GlobalOptions {
    std::uint64_t seed = 1;
    std::optional<double> tol;  ///< overrides the subcommand's pass tolerance
    std::string out;            ///< report prefix: <out>.json and <out>.csv; stdout when empty
    std::string config;
};

// ---------------------------------------------------------------------------
// config.cpp: input sources

/// `gaussian:c=2[,n=1]`, `gaussian:diag=1;2`, `gaussian:full=a;b;c;d` or `file:<path>`.
struct TargetSpec {
    enum class Kind { Gaussian, File } kind = Kind::Gaussian;
    std::optional<GaussianFamilyPoint> gaussian;
    std::string path;
    std::string text;
};

TargetSpec parse_target(const std::string& text);

/// Target for the surface-area problems. Gaussian targets use whitened
/// quadrature with `resolution` nodes per axis; file targets are read as is.
SurfaceTarget load_target(const TargetSpec& spec, std::size_t resolution);

/// The fields named by `paths`, or `count` seeded random fields on a shared
/// random n-point space when `paths` is empty.
std::vector<DensityField> load_fields(const std::vector<std::string>& paths, std::size_t count, std::size_t n,
                                      std::uint64_t seed);

/// Star bodies from files, or `count` seeded random bodies on a grid of
/// the given dimension and resolution.
std::vector<StarBodyGrid> load_bodies(const std::vector<std::string>& paths, std::size_t count, int dim,
                                      std::size_t resolution, std::uint64_t seed);

/// Comma separated list of reals, e.g. "1e-2,1e-3".
std::vector<double> parse_real_list(const std::string& text);

// ---------------------------------------------------------------------------
// report.cpp

/// Metadata block embedded in every report.
Json report_header(const std::string& command, std::uint64_t seed, const Json& tolerances, const Json& resolutions,
                   const Json& gauges);

Json to_json(const InequalityReport& r);
Json to_json(const DivergenceResult& r);
Json to_json(const VariationEstimate& r);
Json to_json(const SurfaceAreaResult& r);
Json to_json(const ClassDReport& r);

/// %.17g, with non-finite values spelled inf / -inf / nan.
std::string format_real(double v);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);
    void add(std::vector<std::string> cells);
    std::size_t rows() const noexcept { return rows_.size(); }
    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Writes <out>.json and <out>.csv, or prints the JSON to stdout when
/// `out` is empty. The csv is skipped when `csv` is null.
void emit(const std::string& out, const Json& report, const CsvTable* csv);

// ---------------------------------------------------------------------------
// suites.cpp: seeded randomized inequality suites

struct SuiteOptions {
    std::size_t trials = 200;
    std::uint64_t seed = 1;
    std::vector<std::size_t> grid_sizes{64, 1024};
    double equality_tolerance = kEqualityTolerance;
};

struct TrialRow {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    std::string config;      ///< gauge and input description
    std::size_t m = 0;
    std::size_t points = 0;
    InequalityReport report;
    bool proportional = false;
    bool agree = true;       ///< crdm only: both inequalities agree
    bool passed = false;
    std::string note;        ///< first failed condition
};

struct SuiteResult {
    std::string suite;
    std::vector<TrialRow> rows;
    std::size_t direction_violations = 0;
    std::size_t equality_failures = 0;  ///< proportional inputs off by more than the tolerance
    std::size_t false_equalities = 0;   ///< equality flagged on non-proportional inputs
    std::size_t disagreements = 0;      ///< crdm flag mismatches
    std::size_t failures = 0;
    bool passed() const { return failures == 0; }
};

const std::vector<std::string>& suite_names();

/// obmi | corollary | ls | crdm | star. Unknown names raise invalid-parameter.
SuiteResult run_suite(const std::string& name, const SuiteOptions& opts);

Json to_json(const SuiteResult& r);
CsvTable to_csv(const SuiteResult& r);

}  // namespace orlicz::cli
