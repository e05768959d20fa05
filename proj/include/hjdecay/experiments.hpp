#pragma once

#include "hjdecay/certificate.hpp"
#include "hjdecay/lax_friedrichs.hpp"
#include "hjdecay/serialization.hpp"

#include <optional>

namespace hjd {

/// One experiment: a hamiltonian, trigonometric initial data, the time table
/// and the numerical resolutions. Calibration thresholds live in the config
/// files, not in the library.
struct ExperimentConfig {
    std::string name = "experiment";
    Hamiltonian hamiltonian = Hamiltonian::quadratic(Mat::identity(1));
    TrigPolynomial initial_data{1, GeneratorBasis::rational_only()};
    std::vector<double> times = {1, 2, 5, 10, 20, 50, 100};
    std::size_t grid = 1024;                       // torus nodes per axis
    std::vector<std::size_t> compare_grids = {128, 256, 512};
    double compare_time = 0.5;
    double epsilon = 0.1;
    std::size_t nd_bound = 10;
    double nd_delta = 0.25;
    std::size_t torus_min_res = 0;
    bool want_certificate = false;
    bool concave = false; // hamiltonian field holds the convex reflection -H(-.)
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    std::map<std::string, double> thresholds; // recorded calibration values
};

/// Accepts .toml (subset; hamiltonian / initial_data reference JSON files
/// relative to the config) or a .json mirror with the same keys.
ExperimentConfig load_config(const std::filesystem::path& path);

/// Rejects every downstream precondition violation before any computation.
void validate_config(const ExperimentConfig& cfg);

struct DecayCurveRow {
    double t = 0.0;
    double sup_deviation = 0.0;      // max over the grid of |u(t,.) - c|
    double bound_minus_c = 0.0;      // certificate envelope, when present
    bool has_bound = false;
    std::string method;
};

struct DecayRunResult {
    std::vector<DecayCurveRow> rows;
    NDReport nd;
    bool nd_checked = false;
    double c = 0.0;
    std::optional<CertificateResult> certificate;
    std::string error; // nonempty when a solve failed mid-run; partial rows kept
};

DecayRunResult run_decay(const ExperimentConfig& cfg);

struct CompareRow {
    double t = 0.0, x = 0.0;
    double hopf_lax = 0.0, lax_friedrichs = 0.0;
    double closed_form = 0.0;
    bool has_closed = false;
};

struct CompareResult {
    std::vector<CompareRow> rows;               // on the coarsest grid
    std::vector<std::size_t> grids;
    std::vector<double> errors;                 // max |LF - HL| per grid
    std::vector<double> observed_orders;        // log2(err_i / err_{i+1})
    double max_pairwise_deviation = 0.0;
};

/// Optional closed form to include in the table (counterexample experiments).
CompareResult run_compare(const ExperimentConfig& cfg,
                          const std::optional<TravelingWave>& closed = std::nullopt);

/// Deterministic artifact emission; format is one of csv | json | svg.
std::vector<std::filesystem::path> emit_decay(const DecayRunResult& result,
                                              const ExperimentConfig& cfg,
                                              const std::string& format);
std::vector<std::filesystem::path> emit_compare(const CompareResult& result,
                                                const ExperimentConfig& cfg,
                                                const std::string& format);

} // namespace hjd
