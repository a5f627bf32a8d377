#pragma once

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cocal7/exterior.hpp"
#include "cocal7/literals.hpp"

namespace cocal7 {

/// Lie algebra given by its structure equations: the list of coframe
/// differentials de^1..de^n (each a 2-form). The bracket is recovered from
/// de^i(e_l, e_k) = -e^i([e_l, e_k]).
///
/// A freshly parsed or constructed algebra is unvalidated; validated() checks
/// d(d e^i) = 0 for every i (equivalent to the Jacobi identity) and returns a
/// flagged copy. Operations that need a consistent bracket require the flag.
class LieAlgebra {
  public:
    static LieAlgebra abelian(int n) {
        require_dimension(n);
        std::vector<ExteriorForm> d(static_cast<std::size_t>(n), ExteriorForm(n, 2));
        LieAlgebra L(n, std::move(d));
        L.jacobi_ok_ = true;
        return L;
    }

    static LieAlgebra from_differentials(std::vector<ExteriorForm> d) {
        int n = static_cast<int>(d.size());
        require_dimension(n);
        for (const auto& f : d) {
            if (f.dimension() != n) throw std::invalid_argument("differential dimension != algebra dimension");
            if (f.degree() != 2 && !f.is_zero()) throw std::invalid_argument("differential must be a 2-form");
        }
        return LieAlgebra(n, std::move(d));
    }

    int dimension() const { return n_; }
    bool jacobi_checked() const { return jacobi_ok_; }

    /// de^i, 1-based.
    const ExteriorForm& differential_of_coframe(int i) const {
        if (i < 1 || i > n_) throw std::invalid_argument("coframe index out of range");
        return d_[static_cast<std::size_t>(i - 1)];
    }

    /// Copy with the Jacobi flag set; throws std::domain_error when d^2 != 0.
    LieAlgebra validated() const;

    friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
        return a.n_ == b.n_ && a.d_ == b.d_;
    }

  private:
    LieAlgebra(int n, std::vector<ExteriorForm> d) : n_(n), d_(std::move(d)) {}

    static void require_dimension(int n) {
        if (n < 1 || n > kMaxDim) throw std::invalid_argument("algebra dimension out of range 1..9");
    }

    int n_;
    std::vector<ExteriorForm> d_;
    bool jacobi_ok_ = false;
};

/// Chevalley-Eilenberg differential: equals the stored de^i on coframe
/// 1-forms and extends as a degree +1 antiderivation; d(scalars) = 0.
inline ExteriorForm ce_differential(const LieAlgebra& L, const ExteriorForm& a) {
    if (a.dimension() != L.dimension()) throw std::invalid_argument("ce_differential: dimension mismatch");
    ExteriorForm out(L.dimension(), a.degree() + 1);
    for (const auto& [index, c] : a.terms()) {
        for (int p = 0; p < index.degree(); ++p) {
            // e^{i1..} ^ ... ^ de^{ip} ^ ... with sign (-1)^p for moving d
            // past the first p coframe factors.
            IndexTuple prefix, suffix;
            {
                std::vector<int> pre, post;
                for (int q = 0; q < index.degree(); ++q) {
                    if (q < p) pre.push_back(index[q]);
                    if (q > p) post.push_back(index[q]);
                }
                prefix = IndexTuple(std::span<const int>(pre));
                suffix = IndexTuple(std::span<const int>(post));
            }
            ExteriorForm term = wedge(wedge(ExteriorForm::basis(L.dimension(), prefix),
                                            L.differential_of_coframe(index[p])),
                                      ExteriorForm::basis(L.dimension(), suffix));
            term *= p % 2 == 0 ? c : -c;
            out += term;
        }
    }
    return out;
}

/// Lie bracket from the structure equations: [X,Y]_i = -de^i(X, Y).
inline Vector bracket(const LieAlgebra& L, const Vector& x, const Vector& y) {
    if (x.n != L.dimension() || y.n != L.dimension()) throw std::invalid_argument("bracket: dimension mismatch");
    Vector out = Vector::zero(L.dimension());
    std::array<Vector, 2> args{x, y};
    for (int i = 1; i <= L.dimension(); ++i)
        out[i] = -evaluate(L.differential_of_coframe(i), std::span<const Vector>(args.data(), 2));
    return out;
}

struct JacobiReport {
    bool ok = false;
    int index = 0;            // offending coframe index when !ok
    ExteriorForm residual;    // the nonzero 3-form d(de^index)

    JacobiReport() : residual(1, 3) {}
};

/// d(d e^i) = 0 for every i, with a witness on failure.
inline JacobiReport check_jacobi(const LieAlgebra& L) {
    JacobiReport report;
    for (int i = 1; i <= L.dimension(); ++i) {
        ExteriorForm dd = ce_differential(L, L.differential_of_coframe(i));
        if (!dd.is_zero()) {
            report.ok = false;
            report.index = i;
            report.residual = dd;
            return report;
        }
    }
    report.ok = true;
    return report;
}

inline LieAlgebra LieAlgebra::validated() const {
    JacobiReport r = check_jacobi(*this);
    if (!r.ok)
        throw std::domain_error("Jacobi identity fails: d(d e^" + std::to_string(r.index) +
                                ") = " + to_literal(r.residual));
    LieAlgebra out = *this;
    out.jacobi_ok_ = true;
    return out;
}

namespace detail {

/// In-place reduced row echelon form; returns the pivot columns.
/// Pivot rule: first row with a nonzero entry, columns left to right.
inline std::vector<int> rref(std::vector<std::vector<Rational>>& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i) {
            if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] != 0) {
                pr = i;
                break;
            }
        }
        if (pr < 0) continue;
        std::swap(m[static_cast<std::size_t>(pr)], m[static_cast<std::size_t>(r)]);
        Rational inv = 1 / m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        for (auto& x : m[static_cast<std::size_t>(r)]) x *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            Rational f = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
            if (f == 0) continue;
            for (int j = 0; j < cols; ++j)
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
                    f * m[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace detail

/// Linear subspace in reduced echelon form; the unique canonical basis makes
/// equality structural.
class Subspace {
  public:
    explicit Subspace(int n) : n_(n) {}

    static Subspace span(int n, std::span<const Vector> vectors) {
        std::vector<std::vector<Rational>> rows;
        rows.reserve(vectors.size());
        for (const auto& v : vectors) {
            if (v.n != n) throw std::invalid_argument("span: dimension mismatch");
            rows.push_back(v.comp);
        }
        auto pivots = detail::rref(rows);
        Subspace s(n);
        for (std::size_t i = 0; i < pivots.size(); ++i) s.basis_.emplace_back(n, rows[i]);
        return s;
    }

    static Subspace full(int n) {
        std::vector<Vector> frame;
        for (int i = 1; i <= n; ++i) frame.push_back(Vector::frame(n, i));
        return span(n, frame);
    }

    int ambient_dimension() const { return n_; }
    int dimension() const { return static_cast<int>(basis_.size()); }
    const std::vector<Vector>& basis() const { return basis_; }

    bool contains(const Vector& v) const {
        if (v.n != n_) return false;
        Vector rem = v;
        for (const auto& b : basis_) {
            int pc = pivot_column(b);
            if (pc < 0) continue;
            Rational f = rem[pc];
            if (f == 0) continue;
            for (int i = 1; i <= n_; ++i) rem[i] -= f * b[i];
        }
        return rem.is_zero();
    }

    friend bool operator==(const Subspace& a, const Subspace& b) = default;

  private:
    static int pivot_column(const Vector& b) {
        for (int i = 1; i <= b.n; ++i)
            if (b[i] != 0) return i;
        return -1;
    }

    int n_;
    std::vector<Vector> basis_;
};

namespace detail {

inline void require_validated(const LieAlgebra& L, const char* op) {
    if (!L.jacobi_checked()) throw std::logic_error(std::string(op) + ": algebra not validated");
}

}  // namespace detail

/// Lower central series g^0 = g, g^{j+1} = [g, g^j], listed until it
/// stabilizes. Nilpotent iff the last term is the zero subspace.
inline std::vector<Subspace> lower_central_series(const LieAlgebra& L) {
    detail::require_validated(L, "lower_central_series");
    const int n = L.dimension();
    std::vector<Subspace> series;
    series.push_back(Subspace::full(n));
    for (;;) {
        const Subspace& cur = series.back();
        std::vector<Vector> spanning;
        for (int i = 1; i <= n; ++i)
            for (const auto& v : cur.basis()) spanning.push_back(bracket(L, Vector::frame(n, i), v));
        Subspace next = Subspace::span(n, spanning);
        int prev_dim = cur.dimension();
        series.push_back(next);
        if (next.dimension() == 0 || next.dimension() == prev_dim) break;
    }
    return series;
}

inline bool is_nilpotent(const LieAlgebra& L) {
    return lower_central_series(L).back().dimension() == 0;
}

/// Center: nullspace of X -> ([X, e_j])_j, canonical echelon basis.
inline Subspace center(const LieAlgebra& L) {
    detail::require_validated(L, "center");
    const int n = L.dimension();
    // Rows: component i of [X, e_j] as a linear function of X.
    std::vector<std::vector<Rational>> rows;
    std::array<Vector, 2> args{Vector::zero(n), Vector::zero(n)};
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            std::vector<Rational> row(static_cast<std::size_t>(n));
            for (int m = 1; m <= n; ++m) {
                args[0] = Vector::frame(n, m);
                args[1] = Vector::frame(n, j);
                row[static_cast<std::size_t>(m - 1)] =
                    -evaluate(L.differential_of_coframe(i), std::span<const Vector>(args.data(), 2));
            }
            rows.push_back(std::move(row));
        }
    }
    auto pivots = detail::rref(rows);
    // Nullspace basis from the RREF: one vector per free column.
    std::vector<Vector> basis;
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
    for (int f = 0; f < n; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        Vector v = Vector::zero(n);
        v[f + 1] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r] + 1] = -rows[r][static_cast<std::size_t>(f)];
        basis.push_back(std::move(v));
    }
    return Subspace::span(n, basis);
}

/// Cartan formula: L_X a = iota_X(d a) + d(iota_X a).
inline ExteriorForm lie_derivative(const LieAlgebra& L, const Vector& x, const ExteriorForm& a) {
    detail::require_validated(L, "lie_derivative");
    if (x.n != L.dimension() || a.dimension() != L.dimension())
        throw std::invalid_argument("lie_derivative: dimension mismatch");
    return contract(x, ce_differential(L, a)) + ce_differential(L, contract(x, a));
}

/// Central extension g = h + R e_{n+1}: de^i re-embedded, de^{n+1} = 0.
inline LieAlgebra extend_central(const LieAlgebra& h) {
    detail::require_validated(h, "extend_central");
    const int n = h.dimension();
    if (n + 1 > kMaxDim) throw std::invalid_argument("extend_central: dimension would exceed 9");
    std::vector<ExteriorForm> d;
    d.reserve(static_cast<std::size_t>(n + 1));
    for (int i = 1; i <= n; ++i) d.push_back(embed(h.differential_of_coframe(i), n + 1));
    d.emplace_back(n + 1, 2);
    return LieAlgebra::from_differentials(std::move(d)).validated();
}

// ---------------------------------------------------------------------------
// Structure-equation notation
// ---------------------------------------------------------------------------

/// Parses structure-equation notation: `(` entry (`,` entry)* `)` where each
/// entry is `0` or a signed sum of e^{..} 2-form terms; compact sums inside
/// braces are accepted (`e^{14+35}` = `e^{14}+e^{35}`, `e^{14-25}` =
/// `e^{14}-e^{25}`). The entry count is the dimension; every index must stay
/// within it. The result is unvalidated.
inline LieAlgebra parse_salamon(std::string_view text) {
    detail::Scanner sc{text};
    sc.expect('(', "'('");
    struct Entry {
        std::vector<detail::RawTerm> terms;
        std::size_t position;
    };
    std::vector<Entry> entries;
    for (;;) {
        sc.skip_ws();
        std::size_t entry_pos = sc.pos;
        auto terms = detail::sum_of_terms(sc, ",)");
        entries.push_back({std::move(terms), entry_pos});
        if (sc.accept(',')) continue;
        sc.expect(')', "',' or ')'");
        break;
    }
    sc.skip_ws();
    if (!sc.at_end()) sc.fail("unexpected trailing input");

    const int n = static_cast<int>(entries.size());
    if (n < 1 || n > kMaxDim) throw ParseError("entry count " + std::to_string(n) + " outside 1..9", 0);
    std::vector<ExteriorForm> d;
    d.reserve(entries.size());
    for (const auto& [terms, position] : entries) {
        for (const auto& t : terms) {
            if (t.has_basis && t.indices.size() != 2)
                throw ParseError("structure-equation entry must be a 2-form", t.position);
        }
        ExteriorForm f = detail::build_form(terms, n, position);
        if (!f.is_zero() && f.degree() != 2) throw ParseError("structure-equation entry must be a 2-form", position);
        if (f.is_zero()) f = ExteriorForm(n, 2);
        d.push_back(std::move(f));
    }
    return LieAlgebra::from_differentials(std::move(d));
}

/// Canonical rendering: lexicographic term order, no compact braces, no
/// whitespace. parse . serialize = identity; serialize . parse canonicalizes.
inline std::string serialize_salamon(const LieAlgebra& L) {
    std::string out = "(";
    for (int i = 1; i <= L.dimension(); ++i) {
        if (i > 1) out += ',';
        out += to_literal(L.differential_of_coframe(i));
    }
    out += ')';
    return out;
}

// ---------------------------------------------------------------------------
// Catalog of six-dimensional examples
// ---------------------------------------------------------------------------

/// A catalog entry keeps the verbatim source string. Defects (wrong entry
/// count, failed Jacobi check) are surfaced via `flagged` + diagnostics, never
/// silently repaired; `algebra` is present whenever the string parses at all
/// (validated when possible).
struct CatalogEntry {
    std::string name;
    std::string source;
    std::optional<LieAlgebra> algebra;
    bool flagged = false;
    std::vector<std::string> diagnostics;
};

inline const std::vector<std::pair<std::string, std::string>>& catalog_sources() {
    static const std::vector<std::pair<std::string, std::string>> entries = {
        {"1A", "(0, 0, 0, e^{12}, e^{13}, e^{23})"},
        {"1B", "(0, 0, e^{12}, e^{13}, e^{23}, e^{14})"},
        {"1C", "(0, 0, e^{12}, e^{13}, e^{23}, e^{14+25})"},
        {"2B", "(0, 0, e^{12}, e^{23}, e^{14+35})"},
        {"2C", "(0, 0, e^{12}, e^{13}, e^{23}, e^{14-25})"},
        {"3A", "(0, 0, 0, 0, e^{12}, e^{15+34})"},
    };
    return entries;
}

inline std::vector<std::string> catalog_names() {
    std::vector<std::string> names;
    for (const auto& [name, source] : catalog_sources()) names.push_back(name);
    return names;
}

inline CatalogEntry catalog(std::string_view name) {
    constexpr int expected_dim = 6;
    for (const auto& [entry_name, source] : catalog_sources()) {
        if (entry_name != name) continue;
        CatalogEntry e;
        e.name = entry_name;
        e.source = source;
        LieAlgebra parsed = parse_salamon(source);  // all six sources parse
        if (parsed.dimension() != expected_dim) {
            e.flagged = true;
            e.diagnostics.push_back("entry count " + std::to_string(parsed.dimension()) + ", expected " +
                                    std::to_string(expected_dim));
        }
        JacobiReport jr = check_jacobi(parsed);
        if (jr.ok) {
            e.algebra = parsed.validated();
        } else {
            e.flagged = true;
            e.algebra = parsed;
            e.diagnostics.push_back("as parsed, d(d e^" + std::to_string(jr.index) +
                                    ") = " + to_literal(jr.residual) + " != 0");
        }
        if (entry_name == "1B")
            e.diagnostics.push_back("a 5-entry variant (0, 0, e^{12}, e^{13}, e^{14}) circulates; "
                                    "the 6-entry form is used here");
        return e;
    }
    throw std::invalid_argument("unknown catalog name: " + std::string(name));
}

}  // namespace cocal7
