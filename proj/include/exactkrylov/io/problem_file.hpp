// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "exactkrylov/core/hexfloat.hpp"
#include "exactkrylov/krylov/structures.hpp"
#include "exactkrylov/problems/jacobi.hpp"
#include "exactkrylov/problems/structured.hpp"

// Text problem files. Tokens are whitespace separated; '#' starts a comment
// running to the end of the line. Each record is a keyword, its dimensions
// and its entries, scalars written as hexadecimal floating-point literals:
//
//   jacobi n            alpha_1..alpha_n, beta_2..beta_n
//   hessenberg n        diagonal, subdiagonal, then superdiagonal 1, 2, ..., n-1
//   nonsymtridiag n     alpha (n), beta superdiagonal (n-1), gamma subdiagonal (n-1)
//   lowerbidiag n       gamma diagonal (n), delta subdiagonal (n-1)
//   blocktridiag m p    m diagonal blocks, then m-1 subdiagonal blocks, each row-major
//   dense r c           row-major entries
//   signedperm n        n pairs "target sign", 0-based, P e_j = sign e_target
//   signedblockperm m p m block targets, then m blocks of p "target sign" pairs
//   beta1 x             scale of the starting vector
//   beta1w x            scale of the left starting vector (two-sided Lanczos)
//   vector n            explicit starting vector
//
// Exactly one matrix record is required; the others are optional.

namespace exactkrylov {

template <IeeeScalar S>
using ProblemMatrix = std::variant<JacobiMatrix<S>, HessenbergMatrix<S>, NonsymTridiagonal<S>, LowerBidiagonal<S>,
                                   BlockTridiagonal<S>, DenseMatrix<S>>;

template <IeeeScalar S>
struct ProblemFile {
    ProblemMatrix<S> matrix;
    std::optional<SignedPermutation> perm;
    std::optional<SignedBlockPermutation> block_perm;
    std::optional<S> beta1;
    std::optional<S> beta1_w;
    std::optional<DenseVector<S>> vector;

    std::string kind() const;

    std::size_t size() const {
        return std::visit([](const auto& m) -> std::size_t {
            if constexpr (std::is_same_v<std::decay_t<decltype(m)>, DenseMatrix<S>>) {
                return m.rows();
            } else {
                return m.size();
            }
        }, matrix);
    }

    /// The matrix operand: P T P^T when a (block) permutation is present, else T.
    DenseMatrix<S> materialized() const {
        DenseMatrix<S> T = std::visit([](const auto& m) -> DenseMatrix<S> {
            if constexpr (std::is_same_v<std::decay_t<decltype(m)>, DenseMatrix<S>>) {
                return m;
            } else {
                return DenseMatrix<S>(m.dense());
            }
        }, matrix);
        if (block_perm) return permute_similar(T, block_perm->flatten());
        if (perm) return permute_similar(T, *perm);
        return T;
    }

    /// Explicit vector if present, otherwise scale * P e_1 (or scale * e_1).
    DenseVector<S> starting_vector(S scale) const {
        if (vector) return *vector;
        const std::size_t n = size();
        if (n == 0) throw PreconditionViolation("problem: empty matrix has no starting vector");
        if (block_perm) return block_perm->flatten().template column<S>(0, scale);
        if (perm) return perm->template column<S>(0, scale);
        return DenseVector<S>::unit(n, 0, scale);
    }
};

namespace detail {

class Tokenizer {
public:
    explicit Tokenizer(std::istream& in) {
        std::string line;
        while (std::getline(in, line)) {
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream ls(line);
            std::string tok;
            while (ls >> tok) tokens_.push_back(tok);
        }
    }

    bool done() const noexcept { return pos_ >= tokens_.size(); }

    std::string next(const char* what) {
        if (done()) throw PreconditionViolation(std::string("problem file: unexpected end of input, expected ") + what);
        return tokens_[pos_++];
    }

    std::size_t count(const char* what) {
        const std::string tok = next(what);
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size() || tok.front() == '-') {
            throw PreconditionViolation("problem file: expected a count for " + std::string(what) + ", got '" + tok + "'");
        }
        return static_cast<std::size_t>(v);
    }

    template <IeeeScalar S>
    S scalar(const char* what) {
        const std::string tok = next(what);
        try {
            return parse_scalar<S>(tok);
        } catch (const PreconditionViolation&) {
            throw PreconditionViolation("problem file: malformed scalar '" + tok + "' in " + what);
        }
    }

    template <IeeeScalar S>
    std::vector<S> scalars(std::size_t n, const char* what) {
        std::vector<S> out(n);
        for (auto& x : out) x = scalar<S>(what);
        return out;
    }

    int sign(const char* what) {
        const std::string tok = next(what);
        if (tok == "1" || tok == "+1") return 1;
        if (tok == "-1") return -1;
        throw PreconditionViolation("problem file: sign must be 1 or -1 in " + std::string(what) + ", got '" + tok + "'");
    }

private:
    std::vector<std::string> tokens_;
    std::size_t pos_ = 0;
};

template <IeeeScalar S>
void write_values(std::ostream& out, std::span<const S> xs) {
    for (std::size_t i = 0; i < xs.size(); ++i) out << (i == 0 ? "" : " ") << format_hex(xs[i]);
    out << '\n';
}

template <IeeeScalar S>
void write_values(std::ostream& out, const std::vector<S>& xs) {
    write_values<S>(out, std::span<const S>(xs));
}

template <IeeeScalar S>
DenseMatrix<S> read_block(Tokenizer& tok, std::size_t p, const char* what) {
    return DenseMatrix<S>(p, p, tok.scalars<S>(p * p, what));
}

inline SignedPermutation read_signed_permutation(Tokenizer& tok, std::size_t n) {
    std::vector<std::size_t> targets(n);
    std::vector<int> signs(n);
    for (std::size_t j = 0; j < n; ++j) {
        targets[j] = tok.count("signedperm target");
        signs[j] = tok.sign("signedperm");
    }
    return SignedPermutation(std::move(targets), std::move(signs));
}

inline void write_signed_permutation(std::ostream& out, const SignedPermutation& P) {
    for (std::size_t j = 0; j < P.size(); ++j) out << (j == 0 ? "" : " ") << P.target(j) << ' ' << P.sign(j);
    out << '\n';
}

}  // namespace detail

template <IeeeScalar S>
std::string ProblemFile<S>::kind() const {
    static constexpr const char* names[] = {"jacobi", "hessenberg", "nonsymtridiag", "lowerbidiag", "blocktridiag",
                                            "dense"};
    return names[matrix.index()];
}

template <IeeeScalar S>
ProblemFile<S> read_problem(std::istream& in) {
    detail::Tokenizer tok(in);
    std::optional<ProblemMatrix<S>> matrix;
    ProblemFile<S> pf{DenseMatrix<S>(), {}, {}, {}, {}, {}};
    const auto set_matrix = [&](ProblemMatrix<S> m) {
        if (matrix) throw PreconditionViolation("problem file: more than one matrix record");
        matrix = std::move(m);
    };
    while (!tok.done()) {
        const std::string key = tok.next("record keyword");
        if (key == "jacobi") {
            const std::size_t n = tok.count("jacobi n");
            auto a = tok.scalars<S>(n, "jacobi diagonal");
            auto b = tok.scalars<S>(n == 0 ? 0 : n - 1, "jacobi off-diagonal");
            set_matrix(JacobiMatrix<S>(std::move(a), std::move(b)));
        } else if (key == "hessenberg") {
            const std::size_t n = tok.count("hessenberg n");
            DenseMatrix<S> h(n, n);
            for (std::size_t i = 0; i < n; ++i) h(i, i) = tok.scalar<S>("hessenberg diagonal");
            for (std::size_t i = 0; i + 1 < n; ++i) h(i + 1, i) = tok.scalar<S>("hessenberg subdiagonal");
            for (std::size_t d = 1; d < n; ++d)
                for (std::size_t i = 0; i + d < n; ++i) h(i, i + d) = tok.scalar<S>("hessenberg superdiagonal");
            set_matrix(HessenbergMatrix<S>(std::move(h)));
        } else if (key == "nonsymtridiag") {
            const std::size_t n = tok.count("nonsymtridiag n");
            const std::size_t off = n == 0 ? 0 : n - 1;
            auto a = tok.scalars<S>(n, "nonsymtridiag alpha");
            auto b = tok.scalars<S>(off, "nonsymtridiag beta");
            auto g = tok.scalars<S>(off, "nonsymtridiag gamma");
            set_matrix(NonsymTridiagonal<S>(std::move(a), std::move(b), std::move(g)));
        } else if (key == "lowerbidiag") {
            const std::size_t n = tok.count("lowerbidiag n");
            auto g = tok.scalars<S>(n, "lowerbidiag gamma");
            auto d = tok.scalars<S>(n == 0 ? 0 : n - 1, "lowerbidiag delta");
            set_matrix(LowerBidiagonal<S>(std::move(g), std::move(d)));
        } else if (key == "blocktridiag") {
            const std::size_t m = tok.count("blocktridiag m");
            const std::size_t p = tok.count("blocktridiag p");
            std::vector<DenseMatrix<S>> diag, sub;
            for (std::size_t b = 0; b < m; ++b) diag.push_back(detail::read_block<S>(tok, p, "blocktridiag M"));
            for (std::size_t b = 0; b + 1 < m; ++b) sub.push_back(detail::read_block<S>(tok, p, "blocktridiag B"));
            set_matrix(BlockTridiagonal<S>(p, std::move(diag), std::move(sub)));
        } else if (key == "dense") {
            const std::size_t r = tok.count("dense rows");
            const std::size_t c = tok.count("dense cols");
            set_matrix(DenseMatrix<S>(r, c, tok.scalars<S>(r * c, "dense entries")));
        } else if (key == "signedperm") {
            pf.perm = detail::read_signed_permutation(tok, tok.count("signedperm n"));
        } else if (key == "signedblockperm") {
            const std::size_t m = tok.count("signedblockperm m");
            const std::size_t p = tok.count("signedblockperm p");
            std::vector<std::size_t> targets(m);
            for (auto& t : targets) t = tok.count("signedblockperm block target");
            std::vector<SignedPermutation> blocks;
            for (std::size_t b = 0; b < m; ++b) blocks.push_back(detail::read_signed_permutation(tok, p));
            pf.block_perm = SignedBlockPermutation(std::move(targets), std::move(blocks));
        } else if (key == "beta1") {
            pf.beta1 = tok.scalar<S>("beta1");
        } else if (key == "beta1w") {
            pf.beta1_w = tok.scalar<S>("beta1w");
        } else if (key == "vector") {
            const std::size_t n = tok.count("vector n");
            pf.vector = DenseVector<S>(tok.scalars<S>(n, "vector entries"));
        } else {
            throw PreconditionViolation("problem file: unknown record '" + key + "'");
        }
    }
    if (!matrix) throw PreconditionViolation("problem file: no matrix record");
    pf.matrix = std::move(*matrix);
    const std::size_t n = pf.size();
    if (pf.perm && pf.perm->size() != n) throw DimensionMismatch("problem file: signedperm size differs from matrix");
    if (pf.block_perm && pf.block_perm->blocks() * pf.block_perm->block_size() != n) {
        throw DimensionMismatch("problem file: signedblockperm size differs from matrix");
    }
    if (pf.vector && pf.vector->size() != n) throw DimensionMismatch("problem file: vector size differs from matrix");
    return pf;
}

template <IeeeScalar S>
void write_problem(std::ostream& out, const ProblemFile<S>& pf) {
    std::visit([&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, JacobiMatrix<S>>) {
            out << "jacobi " << m.size() << '\n';
            detail::write_values(out, m.alpha());
            detail::write_values(out, m.beta());
        } else if constexpr (std::is_same_v<M, HessenbergMatrix<S>>) {
            const std::size_t n = m.size();
            out << "hessenberg " << n << '\n';
            std::vector<S> diag(n), sub(n == 0 ? 0 : n - 1);
            for (std::size_t i = 0; i < n; ++i) diag[i] = m(i, i);
            for (std::size_t i = 0; i + 1 < n; ++i) sub[i] = m(i + 1, i);
            detail::write_values(out, diag);
            detail::write_values(out, sub);
            for (std::size_t d = 1; d < n; ++d) {
                std::vector<S> sup;
                for (std::size_t i = 0; i + d < n; ++i) sup.push_back(m(i, i + d));
                detail::write_values(out, sup);
            }
        } else if constexpr (std::is_same_v<M, NonsymTridiagonal<S>>) {
            out << "nonsymtridiag " << m.size() << '\n';
            detail::write_values(out, m.alpha());
            detail::write_values(out, m.beta());
            detail::write_values(out, m.gamma());
        } else if constexpr (std::is_same_v<M, LowerBidiagonal<S>>) {
            out << "lowerbidiag " << m.size() << '\n';
            detail::write_values(out, m.gamma());
            detail::write_values(out, m.delta());
        } else if constexpr (std::is_same_v<M, BlockTridiagonal<S>>) {
            out << "blocktridiag " << m.blocks() << ' ' << m.block_size() << '\n';
            for (const auto& b : m.diagonal_blocks()) detail::write_values(out, b.entries());
            for (const auto& b : m.subdiagonal_blocks()) detail::write_values(out, b.entries());
        } else {
            out << "dense " << m.rows() << ' ' << m.cols() << '\n';
            for (std::size_t r = 0; r < m.rows(); ++r) detail::write_values(out, m.row(r));
        }
    }, pf.matrix);
    if (pf.perm) {
        out << "signedperm " << pf.perm->size() << '\n';
        detail::write_signed_permutation(out, *pf.perm);
    }
    if (pf.block_perm) {
        const auto& P = *pf.block_perm;
        out << "signedblockperm " << P.blocks() << ' ' << P.block_size() << '\n';
        for (std::size_t j = 0; j < P.blocks(); ++j) out << (j == 0 ? "" : " ") << P.block_targets()[j];
        out << '\n';
        for (std::size_t j = 0; j < P.blocks(); ++j) detail::write_signed_permutation(out, P.block(j));
    }
    if (pf.beta1) out << "beta1 " << format_hex(*pf.beta1) << '\n';
    if (pf.beta1_w) out << "beta1w " << format_hex(*pf.beta1_w) << '\n';
    if (pf.vector) {
        out << "vector " << pf.vector->size() << '\n';
        detail::write_values(out, pf.vector->entries());
    }
}

}  // namespace exactkrylov
