#pragma once

#include "mirror/fiber.hpp"
#include "mirror/peterson.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mirror {

struct SolverConfig {
    enum class Method { Auto, Quiver, Chart };
    Method method = Method::Auto;     // Auto: quiver for P = B, chart otherwise
    std::uint64_t seed = 42;
    std::size_t starts = 0;           // 0 -> 200 * fiber dimension
    double residual_tol = 1e-12;      // relative to the largest coordinate scale
    double dedup_radius = 1e-6;
    double degenerate_sv = 1e-8;
    double check_tol = 1e-8;          // stabilizer / critical-locus verdicts
    int max_iterations = 80;
    unsigned threads = 1;
};

struct CriticalRecord {
    std::vector<Complex> coords;       // quiver: sigma per arrow; torus chart: coordinates; affine: u1 entries
    std::string chart;                 // "quiver", "affine", or the reduced word of w0 used
    Complex value;                     // phase: F~(sigma) or F_P(b)
    Complex log_term;                  // equivariant part: sum lambda_i log b_ii (chart) / sum_v T_v net(v) over V_- (quiver)
    double grad_residual = 0.0;
    double hessian_min_sv = 0.0;
    bool degenerate = false;
    Matrix<Complex> b;
    Matrix<Complex> toda;              // mu image
    std::vector<Complex> conserved;    // c_1..c_{n+1}
    std::vector<Complex> q_extracted;
    double stabilizer_residual = 0.0;
    bool stabilizer_ok = false;
    CriticalLocusReport locus;
    double off_pattern = 0.0;
};

struct SolveDiagnostics {
    std::size_t starts = 0;
    std::size_t converged = 0;
    std::size_t failed = 0;
    std::size_t duplicates = 0;
    std::size_t degenerate = 0;
    std::string method;
};

struct SolveResult {
    std::vector<CriticalRecord> records;
    SolveDiagnostics diagnostics;
};

std::size_t fiber_dimension(const Parabolic& P);

SolveResult solve_critical(const FiberSpec& fiber, const SolverConfig& config = {});

// Fills b-derived fields (factorization, mu image, q, checks) of a record from b.
void annotate_record(CriticalRecord& rec, const FiberSpec& fiber, double tol);

// Gradient of the fiber phase (plus log term) at chart coordinates, for the three-way check.
struct ChartEvaluation {
    Complex value;
    std::vector<Complex> gradient;
    Matrix<Complex> hessian;
    Matrix<Complex> b;
};
// An empty word selects the affine chart, whose variables are the u1 entries themselves.
ChartEvaluation evaluate_chart(const FiberSpec& fiber, const Word& w0_word, const std::vector<Complex>& logs);

// Quiver residuals at sigma built from lower-vertex logarithms (diagonal from q).
std::vector<Complex> quiver_sigma(const Quiver& Q, const std::vector<Complex>& q, const std::vector<Complex>& lower_logs);

// Affine chart of the fiber: u1 entries at the positions of U+ ∩ wbar U- wbar^{-1}.
std::vector<Complex> affine_coordinates(const FiberSpec& fiber, const Matrix<Complex>& b);
Matrix<Complex> affine_point(const FiberSpec& fiber, const std::vector<Complex>& z);

// The three characterizations of a critical point, evaluated independently at b.
struct ThreeWayVerdict {
    double grad_residual = 0.0;  // affine-chart gradient, relative to the fiber scale
    bool gradient = false;
    CheckResult stabilizer;
    CriticalLocusReport locus;
    bool agree() const { return gradient == stabilizer.ok && gradient == locus.ok; }
};
ThreeWayVerdict three_way_check(const FiberSpec& fiber, const Matrix<Complex>& b, double tol);

}  // namespace mirror
