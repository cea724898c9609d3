// SPDX-License-Identifier: Apache-2.0
//
// exactkrylov: generate structured problems, run Krylov methods on them and
// check exactness. Exit codes: 0 success, 1 failed check, 2 usage, I/O or
// precondition error.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "exactkrylov/cg/cg.hpp"
#include "exactkrylov/cg/rational_cg.hpp"
#include "exactkrylov/core/hexfloat.hpp"
#include "exactkrylov/harness/csv.hpp"
#include "exactkrylov/harness/exactness.hpp"
#include "exactkrylov/harness/experiments.hpp"
#include "exactkrylov/harness/roundtrip.hpp"
#include "exactkrylov/harness/sweep.hpp"
#include "exactkrylov/io/problem_file.hpp"
#include "exactkrylov/krylov/gmres.hpp"

namespace ek = exactkrylov;

namespace {

/// Bad flag combinations and I/O failures: exit 2.
class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A check ran and failed: exit 1.
class CheckFailed : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string precision = "binary64";
    std::uint64_t seed = 1;
    std::size_t n = 0;
    std::optional<std::size_t> k;
    std::size_t p = 1;
    std::string variant = "mgs";
    std::string reorth = "none";
    std::string qr = "mgs";
    std::string out;
    std::string problem;
    std::string csv;
    bool e1 = false;
    std::optional<std::string> beta1;
    std::optional<std::string> beta1_w;
    std::string v_file;
    bool check_exact = false;
    bool with_basis = false;
    // gen
    bool spd = false;
    bool guard_ranges = false;
    bool log_uniform = false;
    std::vector<double> diag_range;
    std::vector<double> offdiag_range;
    std::string kind = "jacobi";
    double lambda_min = ek::kStrakosLambdaMin;
    double lambda_max = ek::kStrakosLambdaMax;
    double rho = ek::kStrakosRho;
    // check / experiment
    std::string algorithm = "lanczos-mgs";
    std::vector<std::size_t> sizes;
    std::size_t seeds = 10;
    std::uint64_t samples = 1000000;
    std::size_t instances = 20;
    std::size_t max_n = 24;
};

// ---------------------------------------------------------------- output

/// Rows of (section, row, col, value, hex).
class Table {
public:
    template <class S>
    void add(const std::string& section, std::size_t row, std::size_t col, S value) {
        out_ << section << ',' << row << ',' << col << ',' << ek::format_shortest(value) << ','
             << ek::format_hex(value) << '\n';
    }

    void add_count(const std::string& section, std::size_t value) {
        add(section, 0, 0, static_cast<double>(value));
    }

    template <class S>
    void add_vector(const std::string& section, const std::vector<S>& xs, std::size_t first_row = 0) {
        for (std::size_t i = 0; i < xs.size(); ++i) add(section, first_row + i, 0, xs[i]);
    }

    template <class S>
    void add_column(const std::string& section, std::size_t col, const ek::DenseVector<S>& v) {
        for (std::size_t i = 0; i < v.size(); ++i) add(section, i, col, v[i]);
    }

    std::string str() const { return "section,row,col,value,hex\n" + out_.str(); }

private:
    std::ostringstream out_;
};

void emit(const Options& o, const std::string& text) {
    if (o.out.empty() || o.out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw UsageError("cannot open output file '" + o.out + "'");
    f << text;
    if (!f) throw UsageError("failed writing output file '" + o.out + "'");
}

std::string read_text(const std::string& path, const char* what) {
    std::ifstream f(path);
    if (!f) throw UsageError(std::string("cannot open ") + what + " '" + path + "'");
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

template <class S>
ek::ProblemFile<S> load_problem(const Options& o) {
    if (o.problem.empty()) throw UsageError("--problem is required");
    std::istringstream in(read_text(o.problem, "problem file"));
    return ek::read_problem<S>(in);
}

template <class S>
S parse_opt_scalar(const std::optional<std::string>& text, S fallback, const char* flag) {
    if (!text) return fallback;
    try {
        return ek::parse_scalar<S>(*text);
    } catch (const ek::PreconditionViolation&) {
        throw UsageError(std::string(flag) + ": malformed value '" + *text + "'");
    }
}

/// Whitespace-separated scalars, '#' comments allowed.
template <class S>
ek::DenseVector<S> read_vector_file(const std::string& path) {
    std::istringstream in(read_text(path, "vector file"));
    std::vector<S> xs;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) xs.push_back(ek::parse_scalar<S>(tok));
    }
    return ek::DenseVector<S>(std::move(xs));
}

// ---------------------------------------------------------------- starting data

/// The structured start: P, the scale beta1 and the resulting vector.
template <class S>
struct Start {
    ek::SignedPermutation perm;
    S beta1{};
    ek::DenseVector<S> v;
    /// True when v came from the structured recipe beta1 P e_1.
    bool structured = false;
};

template <class S>
ek::SignedPermutation problem_perm(const ek::ProblemFile<S>& pf) {
    if (pf.block_perm) return pf.block_perm->flatten();
    if (pf.perm) return *pf.perm;
    return ek::SignedPermutation::identity(pf.size());
}

/// --v-file, else --e1 (or no explicit vector in the file): beta1 P e_1 with
/// beta1 from --beta1, the file, or 1.
template <class S>
Start<S> starting_vector(const Options& o, const ek::ProblemFile<S>& pf) {
    Start<S> s;
    s.perm = problem_perm(pf);
    s.beta1 = parse_opt_scalar<S>(o.beta1, pf.beta1.value_or(S(1)), "--beta1");
    if (!o.v_file.empty()) {
        s.v = read_vector_file<S>(o.v_file);
        if (s.v.size() != pf.size()) throw ek::DimensionMismatch("--v-file length differs from the problem size");
        return s;
    }
    if (!o.e1 && pf.vector) {
        s.v = *pf.vector;
        return s;
    }
    s.v = s.perm.template column<S>(0, s.beta1);
    s.structured = true;
    return s;
}

std::size_t steps_or(const Options& o, std::size_t n) {
    const std::size_t k = o.k.value_or(n);
    if (k == 0 || k > n) throw UsageError("--k must be in 1.." + std::to_string(n));
    return k;
}

template <class Expected, class S>
const Expected& projected_as(const ek::ProblemFile<S>& pf, const char* algorithm) {
    if (const auto* m = std::get_if<Expected>(&pf.matrix)) return *m;
    throw UsageError(std::string("--check-exact with ") + algorithm + " needs a problem file with a matching " +
                     "structured matrix, got '" + pf.kind() + "'");
}

void require_structured_start(bool structured) {
    if (!structured) throw UsageError("--check-exact needs the structured start (--e1), not an explicit vector");
}

void report_check(const ek::ExactnessCheck& c) {
    if (c.passed()) {
        std::cerr << "exactness check passed\n";
        return;
    }
    throw CheckFailed("exactness check failed: " + c.mismatch.value_or("unknown mismatch"));
}

// ---------------------------------------------------------------- gen

template <class S>
ek::CoefficientRanges gen_ranges(const Options& o) {
    if (o.guard_ranges) return ek::sweep_ranges<S>();
    ek::CoefficientRanges r;
    if (!o.diag_range.empty()) r.diag = {o.diag_range.at(0), o.diag_range.at(1)};
    if (!o.offdiag_range.empty()) r.offdiag = {o.offdiag_range.at(0), o.offdiag_range.at(1)};
    if (o.log_uniform) r.offdiag_sampling = ek::Sampling::log_uniform;
    return r;
}

std::size_t require_n(const Options& o) {
    if (o.n == 0) throw UsageError("--n must be positive");
    return o.n;
}

template <class S>
ek::ProblemFile<S> generate_matrix(const std::string& kind, const Options& o, std::uint64_t seed) {
    const auto ranges = gen_ranges<S>(o);
    const std::size_t n = require_n(o);
    ek::ProblemFile<S> pf{ek::DenseMatrix<S>(), {}, {}, {}, {}, {}};
    if (kind == "jacobi") {
        pf.matrix = ek::random_jacobi<S>(n, seed, ranges, o.spd);
    } else if (kind == "hessenberg") {
        pf.matrix = ek::random_hessenberg<S>(n, seed, ranges);
    } else if (kind == "nonsymtridiag") {
        pf.matrix = ek::random_nonsym_tridiagonal<S>(n, seed, ranges);
    } else if (kind == "lowerbidiag") {
        pf.matrix = ek::random_lower_bidiagonal<S>(n, seed, ranges);
    } else if (kind == "blocktridiag") {
        if (o.p == 0 || n % o.p != 0) throw UsageError("--p must divide --n for blocktridiag");
        pf.matrix = ek::random_block_tridiagonal<S>(n / o.p, o.p, seed, ranges);
    } else {
        throw UsageError("unknown matrix kind '" + kind + "'");
    }
    return pf;
}

template <class S>
int cmd_gen(const std::string& what, const Options& o) {
    ek::ProblemFile<S> pf{ek::DenseMatrix<S>(), {}, {}, {}, {}, {}};
    if (what == "signedperm") {
        const auto P = ek::SignedPermutation::random(require_n(o), o.seed);
        pf.matrix = P.template dense<S>();
        pf.perm = P;
    } else if (what == "strakos") {
        const std::size_t n = o.n == 0 ? ek::kStrakosSize : o.n;
        const auto lambda = ek::strakos_spectrum<S>(n, static_cast<S>(o.lambda_min), static_cast<S>(o.lambda_max),
                                                    static_cast<S>(o.rho));
        pf.matrix = ek::DenseMatrix<S>::diagonal(lambda);
        pf.vector = ek::DenseVector<S>(std::vector<S>(n, S(1)));
    } else if (what == "structured") {
        // Matrix, permutation and scales come from independent sub-seeds.
        pf = generate_matrix<S>(o.kind, o, ek::detail::subseed(o.seed, 0));
        const std::uint64_t perm_seed = ek::detail::subseed(o.seed, 1);
        if (const auto* T = std::get_if<ek::BlockTridiagonal<S>>(&pf.matrix)) {
            pf.block_perm = ek::SignedBlockPermutation::random(T->blocks(), T->block_size(), perm_seed);
        } else {
            pf.perm = ek::SignedPermutation::random(pf.size(), perm_seed);
        }
        pf.beta1 = parse_opt_scalar<S>(o.beta1, S(1), "--beta1");
        if (o.kind == "nonsymtridiag") pf.beta1_w = parse_opt_scalar<S>(o.beta1_w, S(1), "--beta1w");
        if (!(*pf.beta1 > S(0))) throw UsageError("--beta1 must be positive");
    } else {
        pf = generate_matrix<S>(what, o, o.seed);
    }
    std::ostringstream text;
    ek::write_problem(text, pf);
    emit(o, text.str());
    return 0;
}

// ---------------------------------------------------------------- run

template <class S>
int run_lanczos(const Options& o, const ek::ProblemFile<S>& pf, const ek::DenseMatrix<S>& A, const Start<S>& st) {
    const std::size_t k = steps_or(o, pf.size());
    const auto res = ek::lanczos(A, st.v, k, ek::parse_lanczos_variant(o.variant),
                                 ek::parse_reorthogonalization(o.reorth));
    Table t;
    t.add("beta1", 0, 0, res.beta1);
    t.add_vector("alpha", res.alpha);
    t.add_vector("beta", res.beta, 1);
    t.add_count("steps", res.steps());
    t.add_count("breakdown", res.breakdown.value_or(0));
    t.add("residual", 0, 0, ek::lanczos_residual(A, res));
    if (o.with_basis)
        for (std::size_t j = 0; j < res.basis.size(); ++j) t.add_column("v", j, res.basis[j]);
    emit(o, t.str());
    if (o.check_exact) {
        require_structured_start(st.structured);
        report_check(ek::check_lanczos_exact(res, projected_as<ek::JacobiMatrix<S>>(pf, "lanczos"), st.perm, st.beta1, k));
    }
    return 0;
}

template <class S>
int run_arnoldi(const Options& o, const ek::ProblemFile<S>& pf, const ek::DenseMatrix<S>& A, const Start<S>& st) {
    const std::size_t k = steps_or(o, pf.size());
    const auto res = ek::arnoldi(A, st.v, k);
    Table t;
    t.add("beta1", 0, 0, res.beta1);
    for (std::size_t j = 0; j < res.H.cols(); ++j)
        for (std::size_t i = 0; i <= j + 1 && i < res.H.rows(); ++i) t.add("H", i, j, res.H(i, j));
    t.add_count("steps", res.steps());
    t.add_count("breakdown", res.breakdown.value_or(0));
    t.add("residual", 0, 0, ek::arnoldi_residual(A, res));
    if (o.with_basis)
        for (std::size_t j = 0; j < res.basis.size(); ++j) t.add_column("v", j, res.basis[j]);
    emit(o, t.str());
    if (o.check_exact) {
        require_structured_start(st.structured);
        report_check(ek::check_arnoldi_exact(res, projected_as<ek::HessenbergMatrix<S>>(pf, "arnoldi"), st.perm,
                                             st.beta1, k));
    }
    return 0;
}

template <class S>
int run_bilanczos(const Options& o, const ek::ProblemFile<S>& pf, const ek::DenseMatrix<S>& A, const Start<S>& st) {
    const std::size_t k = steps_or(o, pf.size());
    const S beta1_w = parse_opt_scalar<S>(o.beta1_w, pf.beta1_w.value_or(S(1)), "--beta1w");
    const auto w = st.perm.template column<S>(0, beta1_w);
    const auto res = ek::nonsym_lanczos(A, st.v, w, k);
    Table t;
    t.add("gamma1", 0, 0, res.gamma1);
    t.add("beta1", 0, 0, res.beta1);
    t.add_vector("alpha", res.alpha);
    t.add_vector("beta", res.beta, 1);
    t.add_vector("gamma", res.gamma, 1);
    t.add_count("steps", res.steps());
    t.add_count("breakdown", res.breakdown.value_or(0));
    if (o.with_basis) {
        for (std::size_t j = 0; j < res.v_basis.size(); ++j) t.add_column("v", j, res.v_basis[j]);
        for (std::size_t j = 0; j < res.w_basis.size(); ++j) t.add_column("w", j, res.w_basis[j]);
    }
    emit(o, t.str());
    if (o.check_exact) {
        require_structured_start(st.structured);
        report_check(ek::check_nonsym_lanczos_exact(res, projected_as<ek::NonsymTridiagonal<S>>(pf, "bilanczos"),
                                                    st.perm, st.beta1, beta1_w, k));
    }
    return 0;
}

template <class S>
int run_gk(const Options& o, const ek::ProblemFile<S>& pf, const ek::DenseMatrix<S>& A, const Start<S>& st) {
    const std::size_t k = steps_or(o, pf.size());
    const auto res = ek::golub_kahan(A, st.v, k);
    Table t;
    t.add_vector("gamma", res.gamma);
    t.add_vector("delta", res.delta);
    t.add_count("steps", res.steps());
    if (res.breakdown) {
        const bool delta = res.breakdown->coefficient == ek::BidiagBreakdown::Coefficient::delta;
        t.add_count(delta ? "breakdown_delta" : "breakdown_gamma", res.breakdown->index);
    }
    t.add("residual", 0, 0, ek::golub_kahan_residual(A, res));
    t.add("residual_transposed", 0, 0, ek::golub_kahan_residual_transposed(A, res));
    if (o.with_basis) {
        for (std::size_t j = 0; j < res.s_basis.size(); ++j) t.add_column("s", j, res.s_basis[j]);
        for (std::size_t j = 0; j < res.w_basis.size(); ++j) t.add_column("w", j, res.w_basis[j]);
    }
    emit(o, t.str());
    if (o.check_exact) {
        require_structured_start(st.structured);
        report_check(ek::check_golub_kahan_exact(res, projected_as<ek::LowerBidiagonal<S>>(pf, "gk"), st.perm,
                                                 st.beta1, k));
    }
    return 0;
}

template <class S>
int run_block(const Options& o, const ek::ProblemFile<S>& pf, const ek::DenseMatrix<S>& A) {
    if (!o.v_file.empty()) throw UsageError("blocklanczos starts from P's leading columns; --v-file is not supported");
    std::size_t p = o.p;
    std::optional<ek::SignedBlockPermutation> bperm = pf.block_perm;
    if (const auto* T = std::get_if<ek::BlockTridiagonal<S>>(&pf.matrix)) p = T->block_size();
    const std::size_t n = pf.size();
    if (p == 0 || n % p != 0) throw UsageError("--p must divide the problem size");
    const ek::SignedPermutation flat = problem_perm(pf);
    ek::DenseMatrix<S> U1(n, p);
    for (std::size_t c = 0; c < p; ++c) U1(flat.target(c), c) = flat.sign(c) < 0 ? S(-1) : S(1);
    const std::size_t k = steps_or(o, n / p);
    const auto res = ek::block_lanczos(A, U1, k, ek::parse_gram_schmidt(o.qr));
    Table t;
    for (std::size_t i = 0; i < res.M.size(); ++i)
        for (std::size_t r = 0; r < p; ++r)
            for (std::size_t c = 0; c < p; ++c) t.add("M", i * p + r, c, res.M[i](r, c));
    for (std::size_t i = 0; i < res.B.size(); ++i)
        for (std::size_t r = 0; r < p; ++r)
            for (std::size_t c = 0; c < p; ++c) t.add("B", (i + 1) * p + r, c, res.B[i](r, c));
    t.add_count("steps", res.steps());
    t.add_count("breakdown", res.breakdown.value_or(0));
    if (o.with_basis)
        for (std::size_t i = 0; i < res.U.size(); ++i)
            for (std::size_t c = 0; c < p; ++c) t.add_column("U", i * p + c, res.U[i].column(c));
    emit(o, t.str());
    if (o.check_exact) {
        const auto& T = projected_as<ek::BlockTridiagonal<S>>(pf, "blocklanczos");
        ek::SignedBlockPermutation P;
        if (bperm) {
            P = *bperm;
        } else {
            const auto outer = ek::SignedPermutation::identity(T.blocks());
            P = ek::SignedBlockPermutation(outer.targets(),
                                           std::vector<ek::SignedPermutation>(T.blocks(), ek::SignedPermutation::identity(p)));
        }
        report_check(ek::check_block_lanczos_exact(res, T, P, k));
    }
    return 0;
}

template <class S>
void add_cg_trace(Table& t, const ek::CGTrace<S>& tr, bool with_iterates) {
    t.add_vector("gamma", tr.gamma);
    t.add_vector("delta", tr.delta);
    t.add_vector("rho", tr.rho);
    t.add_count("iterations", tr.iterations());
    t.add_column("x", 0, tr.x.back());
    if (with_iterates)
        for (std::size_t k = 0; k < tr.x.size(); ++k) t.add_column("x_k", k, tr.x[k]);
}

template <class S>
int run_cg_hs(const Options& o, const ek::ProblemFile<S>& pf, const ek::DenseMatrix<S>& A, const Start<S>& st) {
    if (o.check_exact) throw UsageError("--check-exact is not defined for cg-hs");
    const auto tr = ek::cg_hs(A, st.v, ek::DenseVector<S>(pf.size()), steps_or(o, pf.size()));
    Table t;
    add_cg_trace(t, tr, o.with_basis);
    emit(o, t.str());
    return 0;
}

template <class S>
int run_cglanczos(const Options& o, const ek::ProblemFile<S>& pf, const ek::DenseMatrix<S>& A, const Start<S>& st) {
    const std::size_t k = steps_or(o, pf.size());
    const auto tr = ek::cglanczos(A, st.v, k);
    Table t;
    add_cg_trace(t, tr, o.with_basis);
    t.add_vector("d", tr.d);
    t.add_vector("ell", tr.ell);
    emit(o, t.str());
    if (o.check_exact) {
        require_structured_start(st.structured);
        // The embedded Lanczos process carries the exactness claim.
        const std::size_t steps = tr.lanczos.steps();
        report_check(ek::check_lanczos_exact(tr.lanczos, projected_as<ek::JacobiMatrix<S>>(pf, "cglanczos"), st.perm,
                                             st.beta1, steps));
    }
    return 0;
}

template <class S>
int run_gmres(const Options& o, const ek::ProblemFile<S>& pf, const ek::DenseMatrix<S>& A, const Start<S>& st) {
    const std::size_t k = steps_or(o, pf.size());
    // GMRES is stated for a unit-norm start, so the structured start drops beta1.
    const auto v = st.structured ? st.perm.template column<S>(0, S(1)) : st.v;
    const auto g = ek::gmres_structured(A, v, k);
    Table t;
    t.add_column("x_bar", 0, g.x_bar);
    t.add_column("y_bar", 0, g.y_bar);
    t.add_count("steps", g.steps);
    t.add("x_error", 0, 0, g.x_error);
    t.add("y_error", 0, 0, g.y_error);
    emit(o, t.str());
    if (o.check_exact) {
        const double scale = std::max(g.x_error, g.y_error);
        const double disc = scale == 0.0 ? 0.0 : std::fabs(g.x_error - g.y_error) / scale;
        if (!(disc <= ek::kGmresIdentityTolerance)) {
            throw CheckFailed("GMRES identity failed: |x error - y error| / max = " + ek::format_hex(disc));
        }
        std::cerr << "GMRES identity holds\n";
    }
    return 0;
}

template <class S>
int cmd_run(const std::string& algorithm, const Options& o) {
    const auto pf = load_problem<S>(o);
    const ek::DenseMatrix<S> A = pf.materialized();
    if (algorithm == "blocklanczos") return run_block(o, pf, A);
    const Start<S> st = starting_vector(o, pf);
    if (algorithm == "lanczos") return run_lanczos(o, pf, A, st);
    if (algorithm == "arnoldi") return run_arnoldi(o, pf, A, st);
    if (algorithm == "bilanczos") return run_bilanczos(o, pf, A, st);
    if (algorithm == "gk") return run_gk(o, pf, A, st);
    if (algorithm == "cg-hs") return run_cg_hs(o, pf, A, st);
    if (algorithm == "cglanczos") return run_cglanczos(o, pf, A, st);
    if (algorithm == "gmres") return run_gmres(o, pf, A, st);
    throw UsageError("unknown algorithm '" + algorithm + "'");
}

// ---------------------------------------------------------------- check / experiment

std::vector<ek::Precision> precisions_of(const std::string& text) {
    if (text == "all") return {ek::Precision::binary64, ek::Precision::binary32};
    return {ek::parse_precision(text)};
}

std::vector<ek::ExactnessReport> run_sweep(const Options& o) {
    ek::SweepConfig cfg;
    cfg.algorithm = ek::parse_sweep_algorithm(o.algorithm);
    cfg.sizes = o.sizes;
    if (cfg.sizes.empty()) cfg.sizes = {require_n(o)};
    for (std::size_t i = 0; i < o.seeds; ++i) cfg.seeds.push_back(o.seed + i);
    cfg.precisions = precisions_of(o.precision);
    cfg.block_size = o.p;
    return ek::exactness_sweep(cfg);
}

std::string sweep_csv(const std::vector<ek::ExactnessReport>& reports) {
    std::ostringstream s;
    s << "algorithm,precision,n,p,seed,projected_match,basis_match,breakdown_match,mismatch\n";
    for (const auto& r : reports) {
        s << ek::to_string(r.algorithm) << ',' << ek::to_string(r.precision) << ',' << r.n << ',' << r.p << ','
          << r.seed << ',' << r.projected_match << ',' << r.basis_match << ',' << r.breakdown_match << ','
          << ek::csv_field(r.mismatch.value_or("")) << '\n';
    }
    return s.str();
}

void fail_on_sweep(const std::vector<ek::ExactnessReport>& reports) {
    std::size_t failures = 0;
    const ek::ExactnessReport* first = nullptr;
    for (const auto& r : reports)
        if (!r.passed() && failures++ == 0) first = &r;
    std::cerr << reports.size() << " runs, " << failures << " mismatches\n";
    if (first) throw CheckFailed("first mismatch: " + first->reproducer() + ": " + first->mismatch.value_or(""));
}

int cmd_check_exactness(const Options& o) {
    const auto reports = run_sweep(o);
    if (!o.out.empty()) emit(o, sweep_csv(reports));
    fail_on_sweep(reports);
    return 0;
}

int cmd_check_lemma31(const Options& o) {
    Table t;
    std::optional<std::string> failure;
    for (ek::Precision p : precisions_of(o.precision)) {
        const ek::RoundtripReport r = p == ek::Precision::binary64
                                          ? ek::check_sqrt_square_roundtrip<double>(o.samples, o.seed)
                                          : ek::check_sqrt_square_roundtrip<float>(o.samples, o.seed);
        const std::string tag(ek::to_string(p));
        t.add_count("samples_" + tag, r.samples);
        t.add_count("violations_" + tag, r.violations);
        if (!r.passed() && !failure) failure = tag + ": " + r.first_violation.value_or("violation");
    }
    emit(o, t.str());
    if (failure) throw CheckFailed("sqrt round-trip violated, " + *failure);
    return 0;
}

int cmd_check_bound52(const Options& o) {
    if (o.max_n < 2 || o.max_n > ek::kRationalOracleMaxSize) {
        throw UsageError("--max-n must be in 2.." + std::to_string(ek::kRationalOracleMaxSize));
    }
    const auto r = ek::check_error_bound(o.instances, o.max_n, o.seed);
    Table t;
    t.add_count("instances", r.instances);
    t.add_count("iterates", r.iterates);
    t.add_count("violations", r.violations);
    t.add("max_ratio", 0, 0, r.max_ratio);
    emit(o, t.str());
    if (!r.passed()) throw CheckFailed("error bound violated: " + r.first_violation.value_or(""));
    return 0;
}

template <class S>
int cmd_check_structure(const Options& o) {
    const auto pf = load_problem<S>(o);
    const ek::DenseMatrix<S> A = pf.materialized();
    const Start<S> st = starting_vector(o, pf);
    const auto found = ek::detect_structure(A, st.v);
    if (!found) throw CheckFailed("no signed-permutation Jacobi structure reachable from the starting vector");
    ek::ProblemFile<S> out{found->jacobi, found->perm, {}, found->beta1, {}, {}};
    std::ostringstream text;
    ek::write_problem(text, out);
    emit(o, text.str());
    std::cerr << "structured: n = " << found->jacobi.size() << ", beta1 = " << ek::format_hex(found->beta1) << '\n';
    return 0;
}

int write_series(const Options& o, const ek::MetricSeries& s) {
    std::ostringstream text;
    ek::write_csv(text, s);
    emit(o, text.str());
    return 0;
}

int cmd_experiment(const std::string& which, const Options& o) {
    if (which == "fig2") {
        const auto r = ek::experiment_fig2();
        write_series(o, r.series);
        if (!r.lanczos_exact) throw CheckFailed("Lanczos loss of orthogonality is not exactly +0");
        return 0;
    }
    if (which == "fig3") {
        const auto r = ek::experiment_fig3();
        write_series(o, r.series);
        if (!(r.max_relative_error <= r.bound)) throw CheckFailed("relative error exceeds 5 u kappa / (1 - 5 u kappa)");
        return 0;
    }
    if (which == "prescribed-curves") {
        const auto r = ek::experiment_prescribed_curves(o.instances, o.max_n, o.seed);
        write_series(o, r.series);
        if (r.exact_mismatches != 0 || !(r.max_residual_error <= ek::kPrescribedResidualTolerance)) {
            throw CheckFailed("prescribed curves not reproduced: " + r.first_failure.value_or(""));
        }
        return 0;
    }
    if (which == "exactness-sweep") {
        const auto reports = run_sweep(o);
        emit(o, sweep_csv(reports));
        fail_on_sweep(reports);
        return 0;
    }
    throw UsageError("unknown experiment '" + which + "'");
}

// ---------------------------------------------------------------- convert

/// Problem file to (section,row,col,value,hex) rows. The first row names the
/// matrix kind and its dimensions; entries carry their matrix coordinates.
template <class S>
std::string problem_to_csv(const ek::ProblemFile<S>& pf) {
    Table t;
    std::visit([&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        const std::string kind = pf.kind();
        if constexpr (std::is_same_v<M, ek::JacobiMatrix<S>>) {
            t.add("matrix:" + kind, m.size(), m.size(), S(0));
            for (std::size_t i = 0; i < m.size(); ++i) t.add("jacobi:alpha", i, i, m.alpha()[i]);
            for (std::size_t i = 0; i + 1 < m.size(); ++i) t.add("jacobi:beta", i + 1, i, m.beta()[i]);
        } else if constexpr (std::is_same_v<M, ek::HessenbergMatrix<S>>) {
            t.add("matrix:" + kind, m.size(), m.size(), S(0));
            for (std::size_t i = 0; i < m.size(); ++i)
                for (std::size_t j = i == 0 ? 0 : i - 1; j < m.size(); ++j) t.add("hessenberg:entry", i, j, m(i, j));
        } else if constexpr (std::is_same_v<M, ek::NonsymTridiagonal<S>>) {
            t.add("matrix:" + kind, m.size(), m.size(), S(0));
            for (std::size_t i = 0; i < m.size(); ++i) t.add("nonsymtridiag:alpha", i, i, m.alpha()[i]);
            for (std::size_t i = 0; i + 1 < m.size(); ++i) t.add("nonsymtridiag:beta", i, i + 1, m.beta()[i]);
            for (std::size_t i = 0; i + 1 < m.size(); ++i) t.add("nonsymtridiag:gamma", i + 1, i, m.gamma()[i]);
        } else if constexpr (std::is_same_v<M, ek::LowerBidiagonal<S>>) {
            t.add("matrix:" + kind, m.size(), m.size(), S(0));
            for (std::size_t i = 0; i < m.size(); ++i) t.add("lowerbidiag:gamma", i, i, m.gamma()[i]);
            for (std::size_t i = 0; i + 1 < m.size(); ++i) t.add("lowerbidiag:delta", i + 1, i, m.delta()[i]);
        } else if constexpr (std::is_same_v<M, ek::BlockTridiagonal<S>>) {
            const std::size_t p = m.block_size();
            t.add("matrix:" + kind, m.blocks(), p, S(0));
            for (std::size_t b = 0; b < m.blocks(); ++b)
                for (std::size_t r = 0; r < p; ++r)
                    for (std::size_t c = 0; c < p; ++c) t.add("blocktridiag:diag", b * p + r, b * p + c, m.diagonal_blocks()[b](r, c));
            for (std::size_t b = 0; b + 1 < m.blocks(); ++b)
                for (std::size_t r = 0; r < p; ++r)
                    for (std::size_t c = 0; c < p; ++c)
                        t.add("blocktridiag:sub", (b + 1) * p + r, b * p + c, m.subdiagonal_blocks()[b](r, c));
        } else {
            t.add("matrix:" + kind, m.rows(), m.cols(), S(0));
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j) t.add("dense:entry", i, j, m(i, j));
        }
    }, pf.matrix);
    if (pf.perm)
        for (std::size_t j = 0; j < pf.perm->size(); ++j) t.add("signedperm", j, pf.perm->target(j), S(pf.perm->sign(j)));
    if (pf.block_perm) {
        const auto& P = *pf.block_perm;
        for (std::size_t j = 0; j < P.blocks(); ++j) t.add("signedblockperm:target", j, P.block_targets()[j], S(1));
        for (std::size_t j = 0; j < P.blocks(); ++j)
            for (std::size_t c = 0; c < P.block_size(); ++c)
                t.add("signedblockperm:block", j * P.block_size() + c, P.block(j).target(c), S(P.block(j).sign(c)));
    }
    if (pf.beta1) t.add("beta1", 0, 0, *pf.beta1);
    if (pf.beta1_w) t.add("beta1w", 0, 0, *pf.beta1_w);
    if (pf.vector)
        for (std::size_t i = 0; i < pf.vector->size(); ++i) t.add("vector", i, 0, (*pf.vector)[i]);
    return t.str();
}

template <class S>
struct CsvEntry {
    std::size_t row = 0, col = 0;
    S value{};
};

std::size_t parse_index(const std::string& text, std::size_t line) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (text.empty() || used != text.size() || text.front() == '-') {
        throw ek::PreconditionViolation("csv line " + std::to_string(line) + ": bad index '" + text + "'");
    }
    return static_cast<std::size_t>(v);
}

template <class S>
ek::ProblemFile<S> csv_to_problem(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "section,row,col,value,hex") {
        throw ek::PreconditionViolation("csv: expected header 'section,row,col,value,hex'");
    }
    std::map<std::string, std::vector<CsvEntry<S>>> sections;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) f.push_back(field);
        if (f.size() != 5) throw ek::PreconditionViolation("csv line " + std::to_string(lineno) + ": expected 5 fields");
        // The hex column is authoritative; the decimal column is for reading.
        sections[f[0]].push_back({parse_index(f[1], lineno), parse_index(f[2], lineno), ek::parse_scalar<S>(f[4])});
    }
    std::string kind;
    CsvEntry<S> shape;
    for (const auto& [name, rows] : sections) {
        if (name.rfind("matrix:", 0) != 0) continue;
        if (!kind.empty() || rows.size() != 1) throw ek::PreconditionViolation("csv: exactly one matrix row required");
        kind = name.substr(7);
        shape = rows.front();
    }
    if (kind.empty()) throw ek::PreconditionViolation("csv: no matrix row");
    const auto entries = [&](const std::string& name) -> const std::vector<CsvEntry<S>>& {
        static const std::vector<CsvEntry<S>> none;
        auto it = sections.find(name);
        return it == sections.end() ? none : it->second;
    };
    const auto bounded = [](std::size_t i, std::size_t limit) {
        if (i >= limit) throw ek::PreconditionViolation("csv: index out of range");
        return i;
    };
    ek::ProblemFile<S> pf{ek::DenseMatrix<S>(), {}, {}, {}, {}, {}};
    const std::size_t n = shape.row;
    const std::size_t off = n == 0 ? 0 : n - 1;
    if (kind == "jacobi") {
        std::vector<S> a(n), b(off);
        for (const auto& e : entries("jacobi:alpha")) a[bounded(e.row, n)] = e.value;
        for (const auto& e : entries("jacobi:beta")) b[bounded(e.col, off)] = e.value;
        pf.matrix = ek::JacobiMatrix<S>(std::move(a), std::move(b));
    } else if (kind == "hessenberg") {
        ek::DenseMatrix<S> h(n, n);
        for (const auto& e : entries("hessenberg:entry")) h(bounded(e.row, n), bounded(e.col, n)) = e.value;
        pf.matrix = ek::HessenbergMatrix<S>(std::move(h));
    } else if (kind == "nonsymtridiag") {
        std::vector<S> a(n), b(off), g(off);
        for (const auto& e : entries("nonsymtridiag:alpha")) a[bounded(e.row, n)] = e.value;
        for (const auto& e : entries("nonsymtridiag:beta")) b[bounded(e.row, off)] = e.value;
        for (const auto& e : entries("nonsymtridiag:gamma")) g[bounded(e.col, off)] = e.value;
        pf.matrix = ek::NonsymTridiagonal<S>(std::move(a), std::move(b), std::move(g));
    } else if (kind == "lowerbidiag") {
        std::vector<S> g(n), d(off);
        for (const auto& e : entries("lowerbidiag:gamma")) g[bounded(e.row, n)] = e.value;
        for (const auto& e : entries("lowerbidiag:delta")) d[bounded(e.col, off)] = e.value;
        pf.matrix = ek::LowerBidiagonal<S>(std::move(g), std::move(d));
    } else if (kind == "blocktridiag") {
        const std::size_t m = shape.row, p = shape.col;
        if (p == 0) throw ek::PreconditionViolation("csv: block size must be positive");
        std::vector<ek::DenseMatrix<S>> diag(m, ek::DenseMatrix<S>(p, p));
        std::vector<ek::DenseMatrix<S>> sub(m == 0 ? 0 : m - 1, ek::DenseMatrix<S>(p, p));
        for (const auto& e : entries("blocktridiag:diag")) diag[bounded(e.row / p, m)](e.row % p, e.col % p) = e.value;
        for (const auto& e : entries("blocktridiag:sub")) sub[bounded(e.col / p, sub.size())](e.row % p, e.col % p) = e.value;
        pf.matrix = ek::BlockTridiagonal<S>(p, std::move(diag), std::move(sub));
    } else if (kind == "dense") {
        ek::DenseMatrix<S> d(shape.row, shape.col);
        for (const auto& e : entries("dense:entry")) d(bounded(e.row, shape.row), bounded(e.col, shape.col)) = e.value;
        pf.matrix = std::move(d);
    } else {
        throw ek::PreconditionViolation("csv: unknown matrix kind '" + kind + "'");
    }
    const std::size_t size = pf.size();
    const auto sign_of = [](S v) {
        if (v == S(1)) return 1;
        if (v == S(-1)) return -1;
        throw ek::PreconditionViolation("csv: permutation sign must be 1 or -1");
    };
    if (const auto& rows = entries("signedperm"); !rows.empty()) {
        std::vector<std::size_t> targets(size);
        std::vector<int> signs(size, 0);
        for (const auto& e : rows) {
            targets[bounded(e.row, size)] = e.col;
            signs[e.row] = sign_of(e.value);
        }
        pf.perm = ek::SignedPermutation(std::move(targets), std::move(signs));
    }
    if (const auto& tr = entries("signedblockperm:target"); !tr.empty()) {
        const auto* T = std::get_if<ek::BlockTridiagonal<S>>(&pf.matrix);
        const std::size_t m = T ? T->blocks() : tr.size();
        const std::size_t p = m == 0 ? 0 : size / m;
        std::vector<std::size_t> targets(m);
        for (const auto& e : tr) targets[bounded(e.row, m)] = e.col;
        std::vector<std::vector<std::size_t>> bt(m, std::vector<std::size_t>(p));
        std::vector<std::vector<int>> bs(m, std::vector<int>(p, 0));
        for (const auto& e : entries("signedblockperm:block")) {
            const std::size_t b = bounded(e.row / p, m), c = e.row % p;
            bt[b][c] = e.col;
            bs[b][c] = sign_of(e.value);
        }
        std::vector<ek::SignedPermutation> blocks;
        for (std::size_t b = 0; b < m; ++b) blocks.emplace_back(bt[b], bs[b]);
        pf.block_perm = ek::SignedBlockPermutation(std::move(targets), std::move(blocks));
    }
    if (const auto& r = entries("beta1"); !r.empty()) pf.beta1 = r.front().value;
    if (const auto& r = entries("beta1w"); !r.empty()) pf.beta1_w = r.front().value;
    if (const auto& r = entries("vector"); !r.empty()) {
        std::vector<S> v(size);
        for (const auto& e : r) v[bounded(e.row, size)] = e.value;
        pf.vector = ek::DenseVector<S>(std::move(v));
    }
    // Round-trip through the text format so the file-level validation applies.
    std::ostringstream text_out;
    ek::write_problem(text_out, pf);
    std::istringstream text_in(text_out.str());
    return ek::read_problem<S>(text_in);
}

template <class S>
int cmd_convert(const Options& o) {
    if (o.problem.empty() == o.csv.empty()) throw UsageError("convert needs exactly one of --problem or --csv");
    if (!o.problem.empty()) {
        emit(o, problem_to_csv(load_problem<S>(o)));
        return 0;
    }
    const auto pf = csv_to_problem<S>(read_text(o.csv, "csv file"));
    std::ostringstream text;
    ek::write_problem(text, pf);
    emit(o, text.str());
    return 0;
}

template <class F>
int with_precision(const Options& o, F&& f) {
    switch (ek::parse_precision(o.precision)) {
        case ek::Precision::binary64:
            return f.template operator()<double>();
        case ek::Precision::binary32:
            return f.template operator()<float>();
    }
    throw UsageError("unknown precision");
}

// ---------------------------------------------------------------- flags

void add_precision(CLI::App* app, Options& o, bool allow_all = false) {
    std::vector<std::string> choices{"binary64", "binary32"};
    if (allow_all) choices.push_back("all");
    app->add_option("--precision", o.precision, "Floating-point format")
        ->check(CLI::IsMember(choices))
        ->capture_default_str();
}

void add_out(CLI::App* app, Options& o) {
    app->add_option("--out", o.out, "Output file (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Krylov subspace methods on structured problems"};
    app.require_subcommand(1);
    Options o;

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a problem file");
    gen->require_subcommand(1);
    std::string gen_kind;
    for (const char* name : {"jacobi", "hessenberg", "nonsymtridiag", "lowerbidiag", "blocktridiag", "signedperm",
                             "strakos", "structured"}) {
        auto* sub = gen->add_subcommand(name, std::string("Generate a ") + name + " problem");
        add_precision(sub, o);
        add_out(sub, o);
        sub->add_option("--n", o.n, "Problem size");
        sub->add_option("--seed", o.seed, "Random seed")->capture_default_str();
        const std::string kind = name;
        if (kind == "strakos") {
            sub->add_option("--lambda-min", o.lambda_min, "Smallest eigenvalue")->capture_default_str();
            sub->add_option("--lambda-max", o.lambda_max, "Largest eigenvalue")->capture_default_str();
            sub->add_option("--rho", o.rho, "Spectrum clustering parameter")->capture_default_str();
        } else if (kind != "signedperm") {
            sub->add_flag("--spd", o.spd, "Shift the Jacobi diagonal to make it positive definite");
            sub->add_option("--p", o.p, "Block size")->capture_default_str();
            sub->add_option("--diag-range", o.diag_range, "Diagonal range LO HI")->expected(2);
            sub->add_option("--offdiag-range", o.offdiag_range, "Normalization coefficient range LO HI")->expected(2);
            sub->add_flag("--log-uniform", o.log_uniform, "Sample normalization coefficients log-uniformly");
            sub->add_flag("--guard-ranges", o.guard_ranges, "Use the full exponent guard, log-uniform");
        }
        if (kind == "structured") {
            sub->add_option("--kind", o.kind, "Projected matrix kind")
                ->check(CLI::IsMember({"jacobi", "hessenberg", "nonsymtridiag", "lowerbidiag", "blocktridiag"}))
                ->capture_default_str();
            sub->add_option("--beta1", o.beta1, "Scale of the starting vector");
            sub->add_option("--beta1w", o.beta1_w, "Scale of the left starting vector");
        }
        sub->callback([&, kind] { gen_kind = kind; });
    }

    // run
    auto* run = app.add_subcommand("run", "Run an algorithm on a problem file");
    run->require_subcommand(1);
    std::string run_algorithm;
    for (const char* name : {"lanczos", "arnoldi", "bilanczos", "gk", "blocklanczos", "cg-hs", "cglanczos", "gmres"}) {
        auto* sub = run->add_subcommand(name, std::string("Run ") + name);
        add_precision(sub, o);
        add_out(sub, o);
        sub->add_option("--problem", o.problem, "Problem file")->required();
        sub->add_option("--k", o.k, "Number of steps (default: n)");
        auto* e1 = sub->add_flag("--e1", o.e1, "Start from beta1 P e_1");
        auto* vf = sub->add_option("--v-file", o.v_file, "Start from the vector in this file");
        e1->excludes(vf);
        vf->excludes(e1);
        sub->add_option("--beta1", o.beta1, "Scale for --e1 (default: the file's beta1, else 1)");
        sub->add_option("--variant", o.variant, "Lanczos variant")
            ->check(CLI::IsMember({"mgs", "cgs"}))
            ->capture_default_str();
        sub->add_option("--reorth", o.reorth, "Reorthogonalization")
            ->check(CLI::IsMember({"none", "full", "double"}))
            ->capture_default_str();
        sub->add_option("--qr", o.qr, "Block Gram-Schmidt variant")
            ->check(CLI::IsMember({"mgs", "cgs"}))
            ->capture_default_str();
        sub->add_option("--p", o.p, "Block size for dense problems")->capture_default_str();
        sub->add_option("--beta1w", o.beta1_w, "Scale of the left starting vector");
        sub->add_flag("--check-exact", o.check_exact, "Compare bitwise against the generating data");
        sub->add_flag("--with-basis", o.with_basis, "Also write basis vectors or iterates");
        const std::string algorithm = name;
        sub->callback([&, algorithm] { run_algorithm = algorithm; });
    }

    // check
    auto* check = app.add_subcommand("check", "Property and exactness checks");
    check->require_subcommand(1);
    std::string check_name;
    auto* c_exact = check->add_subcommand("exactness", "Bitwise sweep over structured instances");
    add_precision(c_exact, o, true);
    o.precision = "binary64";
    c_exact->add_option("--algorithm", o.algorithm, "Algorithm")->capture_default_str();
    c_exact->add_option("--n", o.n, "Problem size");
    c_exact->add_option("--sizes", o.sizes, "Problem sizes");
    c_exact->add_option("--seed", o.seed, "First seed")->capture_default_str();
    c_exact->add_option("--seeds", o.seeds, "Number of seeds")->capture_default_str();
    c_exact->add_option("--p", o.p, "Block size")->capture_default_str();
    add_out(c_exact, o);
    c_exact->callback([&] { check_name = "exactness"; });

    auto* c_lemma = check->add_subcommand("lemma31", "sqrt(fl(a^2)) == |a| on sampled scalars");
    add_precision(c_lemma, o, true);
    c_lemma->add_option("--samples", o.samples, "Samples per precision")->capture_default_str();
    c_lemma->add_option("--seed", o.seed, "Seed")->capture_default_str();
    add_out(c_lemma, o);
    c_lemma->callback([&] { check_name = "lemma31"; });

    auto* c_bound = check->add_subcommand("bound52", "cgLanczos forward error bound against the rational oracle");
    c_bound->add_option("--instances", o.instances, "Number of instances")->capture_default_str();
    c_bound->add_option("--max-n", o.max_n, "Largest problem size")->capture_default_str();
    c_bound->add_option("--seed", o.seed, "Seed")->capture_default_str();
    add_out(c_bound, o);
    c_bound->callback([&] { check_name = "bound52"; });

    auto* c_struct = check->add_subcommand("structure", "Detect a signed-permutation Jacobi structure");
    add_precision(c_struct, o);
    c_struct->add_option("--problem", o.problem, "Problem file")->required();
    auto* s_e1 = c_struct->add_flag("--e1", o.e1, "Start from beta1 P e_1");
    auto* s_vf = c_struct->add_option("--v-file", o.v_file, "Start from the vector in this file");
    s_e1->excludes(s_vf);
    s_vf->excludes(s_e1);
    c_struct->add_option("--beta1", o.beta1, "Scale for --e1");
    add_out(c_struct, o);
    c_struct->callback([&] { check_name = "structure"; });

    // experiment
    auto* exp = app.add_subcommand("experiment", "Reproducible experiments, CSV output");
    exp->require_subcommand(1);
    std::string experiment_name;
    for (const char* name : {"fig2", "fig3", "prescribed-curves", "exactness-sweep"}) {
        auto* sub = exp->add_subcommand(name, std::string("Experiment ") + name);
        add_out(sub, o);
        const std::string which = name;
        if (which == "prescribed-curves") {
            sub->add_option("--instances", o.instances, "Number of curve pairs")->capture_default_str();
            sub->add_option("--max-n", o.max_n, "Largest problem size")->capture_default_str();
            sub->add_option("--seed", o.seed, "Seed")->capture_default_str();
        } else if (which == "exactness-sweep") {
            add_precision(sub, o, true);
            sub->add_option("--algorithm", o.algorithm, "Algorithm")->capture_default_str();
            sub->add_option("--n", o.n, "Problem size");
            sub->add_option("--sizes", o.sizes, "Problem sizes");
            sub->add_option("--seed", o.seed, "First seed")->capture_default_str();
            sub->add_option("--seeds", o.seeds, "Number of seeds")->capture_default_str();
            sub->add_option("--p", o.p, "Block size")->capture_default_str();
        }
        sub->callback([&, which] { experiment_name = which; });
    }

    // convert
    auto* conv = app.add_subcommand("convert", "Problem file <-> CSV summary");
    add_precision(conv, o);
    add_out(conv, o);
    auto* c_problem = conv->add_option("--problem", o.problem, "Problem file to summarize as CSV");
    auto* c_csv = conv->add_option("--csv", o.csv, "CSV summary to turn back into a problem file");
    c_problem->excludes(c_csv);
    c_csv->excludes(c_problem);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) return with_precision(o, [&]<class S>() { return cmd_gen<S>(gen_kind, o); });
        if (run->parsed()) return with_precision(o, [&]<class S>() { return cmd_run<S>(run_algorithm, o); });
        if (check->parsed()) {
            if (check_name == "exactness") return cmd_check_exactness(o);
            if (check_name == "lemma31") return cmd_check_lemma31(o);
            if (check_name == "bound52") return cmd_check_bound52(o);
            return with_precision(o, [&]<class S>() { return cmd_check_structure<S>(o); });
        }
        if (exp->parsed()) return cmd_experiment(experiment_name, o);
        if (conv->parsed()) return with_precision(o, [&]<class S>() { return cmd_convert<S>(o); });
    } catch (const CheckFailed& e) {
        std::cerr << "FAILED: " << e.what() << '\n';
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const ek::SeriousBreakdown& e) {
        std::cerr << "serious breakdown: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
