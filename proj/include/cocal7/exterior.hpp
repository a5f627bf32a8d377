#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cocal7/rational.hpp"

namespace cocal7 {

/// Frames are at most 9-dimensional so every index is a single digit.
inline constexpr int kMaxDim = 9;

/// Strictly increasing tuple of frame indices in 1..n. Canonical key for a
/// basis k-form e^{i1...ik}; the empty tuple labels scalars.
class IndexTuple {
  public:
    IndexTuple() = default;

    IndexTuple(std::initializer_list<int> indices) {
        for (int i : indices) push_back_checked(i);
    }

    explicit IndexTuple(std::span<const int> indices) {
        for (int i : indices) push_back_checked(i);
    }

    /// Sorts an arbitrary index sequence into a tuple, returning the sign of
    /// the sorting permutation. Sign 0 means a repeated index (the tuple is
    /// then empty and meaningless).
    static std::pair<IndexTuple, int> canonicalized(std::span<const int> indices) {
        std::array<int, kMaxDim> buf{};
        if (indices.size() > static_cast<std::size_t>(kMaxDim))
            throw std::invalid_argument("index tuple longer than 9");
        std::copy(indices.begin(), indices.end(), buf.begin());
        int m = static_cast<int>(indices.size());
        int sign = 1;
        for (int i = 0; i < m; ++i) {
            for (int j = i + 1; j < m; ++j) {
                if (buf[i] == buf[j]) return {IndexTuple{}, 0};
                if (buf[i] > buf[j]) {
                    std::swap(buf[i], buf[j]);
                    sign = -sign;
                }
            }
        }
        IndexTuple t;
        for (int i = 0; i < m; ++i) t.push_back_checked(buf[i]);
        return {t, sign};
    }

    int degree() const { return size_; }
    bool empty() const { return size_ == 0; }

    /// 0-based position access; returns the (1-based) frame index.
    int operator[](int pos) const { return ix_[static_cast<std::size_t>(pos)]; }

    bool contains(int index) const { return position_of(index) >= 0; }

    /// 0-based position of a frame index, -1 if absent.
    int position_of(int index) const {
        for (int p = 0; p < size_; ++p)
            if (ix_[static_cast<std::size_t>(p)] == index) return p;
        return -1;
    }

    int max_index() const { return size_ == 0 ? 0 : ix_[static_cast<std::size_t>(size_ - 1)]; }

    /// Tuple with the entry at 0-based position removed.
    IndexTuple without_position(int pos) const {
        IndexTuple t;
        for (int p = 0; p < size_; ++p)
            if (p != pos) t.push_back_checked(ix_[static_cast<std::size_t>(p)]);
        return t;
    }

    /// Complement within 1..n.
    IndexTuple complement(int n) const {
        IndexTuple t;
        for (int i = 1; i <= n; ++i)
            if (!contains(i)) t.push_back_checked(i);
        return t;
    }

    std::string digits() const {
        std::string s;
        for (int p = 0; p < size_; ++p) s += static_cast<char>('0' + ix_[static_cast<std::size_t>(p)]);
        return s;
    }

    friend std::strong_ordering operator<=>(const IndexTuple& a, const IndexTuple& b) {
        int m = std::min(a.size_, b.size_);
        for (int p = 0; p < m; ++p) {
            if (auto c = a.ix_[static_cast<std::size_t>(p)] <=> b.ix_[static_cast<std::size_t>(p)]; c != 0) return c;
        }
        return a.size_ <=> b.size_;
    }
    friend bool operator==(const IndexTuple& a, const IndexTuple& b) {
        return a.size_ == b.size_ &&
               std::equal(a.ix_.begin(), a.ix_.begin() + a.size_, b.ix_.begin());
    }

  private:
    void push_back_checked(int index) {
        if (index < 1 || index > kMaxDim) throw std::invalid_argument("frame index out of range 1..9");
        if (size_ > 0 && ix_[static_cast<std::size_t>(size_ - 1)] >= index)
            throw std::invalid_argument("index tuple not strictly increasing");
        if (size_ >= kMaxDim) throw std::invalid_argument("index tuple longer than 9");
        ix_[static_cast<std::size_t>(size_++)] = static_cast<std::uint8_t>(index);
    }

    std::int8_t size_ = 0;
    std::array<std::uint8_t, kMaxDim> ix_{};
};

/// Concatenation sign of two sorted tuples: +-1 for the shuffle permutation,
/// 0 when they share an index.
inline std::pair<IndexTuple, int> merge_tuples(const IndexTuple& a, const IndexTuple& b) {
    // Inversions between a and b (both already sorted).
    int inversions = 0;
    IndexTuple merged;
    int pa = 0, pb = 0;
    std::array<int, 2 * kMaxDim> out{};
    int m = 0;
    while (pa < a.degree() && pb < b.degree()) {
        if (a[pa] == b[pb]) return {IndexTuple{}, 0};
        if (a[pa] < b[pb]) {
            out[static_cast<std::size_t>(m++)] = a[pa++];
        } else {
            out[static_cast<std::size_t>(m++)] = b[pb++];
            inversions += a.degree() - pa;
        }
    }
    while (pa < a.degree()) out[static_cast<std::size_t>(m++)] = a[pa++];
    while (pb < b.degree()) out[static_cast<std::size_t>(m++)] = b[pb++];
    IndexTuple t(std::span<const int>(out.data(), static_cast<std::size_t>(m)));
    return {t, inversions % 2 == 0 ? 1 : -1};
}

/// Frame vector with exact rational components; component i multiplies e_i.
struct Vector {
    int n = 0;
    std::vector<Rational> comp;

    Vector() = default;
    Vector(int dim, std::vector<Rational> c) : n(dim), comp(std::move(c)) {
        if (static_cast<int>(comp.size()) != n) throw std::invalid_argument("vector component count != dimension");
    }
    static Vector zero(int dim) { return Vector(dim, std::vector<Rational>(static_cast<std::size_t>(dim))); }
    static Vector frame(int dim, int i) {
        Vector v = zero(dim);
        v[i] = 1;
        return v;
    }

    /// 1-based component access.
    Rational& operator[](int i) { return comp[static_cast<std::size_t>(i - 1)]; }
    const Rational& operator[](int i) const { return comp[static_cast<std::size_t>(i - 1)]; }

    bool is_zero() const {
        return std::all_of(comp.begin(), comp.end(), [](const Rational& c) { return c == 0; });
    }

    friend Vector operator*(const Rational& t, const Vector& v) {
        Vector out = v;
        for (auto& c : out.comp) c *= t;
        return out;
    }
    friend Vector operator+(const Vector& a, const Vector& b) {
        if (a.n != b.n) throw std::invalid_argument("vector dimension mismatch");
        Vector out = a;
        for (int i = 1; i <= a.n; ++i) out[i] += b[i];
        return out;
    }
    friend bool operator==(const Vector& a, const Vector& b) = default;
};

/// Homogeneous k-form over an n-dimensional frame. Coefficients are exact
/// rationals keyed by strictly increasing index tuples; zero coefficients are
/// never stored. Immutable in practice: operations return new values.
///
/// The degree is kept even for the zero form (e.g. a wedge that overflows the
/// dimension); two zero forms compare equal regardless of stored degree.
class ExteriorForm {
  public:
    ExteriorForm(int n, int k) : n_(n), k_(k) {
        if (n < 0 || n > kMaxDim) throw std::invalid_argument("dimension out of range 0..9");
        if (k < 0 || k > 2 * kMaxDim) throw std::invalid_argument("degree out of range");
    }

    static ExteriorForm zero(int n, int k) { return ExteriorForm(n, k); }

    static ExteriorForm basis(int n, const IndexTuple& index, Rational coefficient = 1) {
        ExteriorForm f(n, index.degree());
        f.add_term(index, std::move(coefficient));
        return f;
    }

    static ExteriorForm scalar(int n, Rational value) {
        ExteriorForm f(n, 0);
        f.add_term(IndexTuple{}, std::move(value));
        return f;
    }

    int dimension() const { return n_; }
    int degree() const { return k_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    const std::map<IndexTuple, Rational>& terms() const { return terms_; }

    Rational coefficient(const IndexTuple& index) const {
        auto it = terms_.find(index);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Accumulates a coefficient; drops the key when the sum cancels.
    ExteriorForm& add_term(const IndexTuple& index, const Rational& coefficient) {
        if (index.degree() != k_) throw std::invalid_argument("term degree != form degree");
        if (index.max_index() > n_) throw std::invalid_argument("term index exceeds dimension");
        accumulate(index, coefficient);
        return *this;
    }

    ExteriorForm& operator+=(const ExteriorForm& other) {
        require_same_space(other);
        if (terms_.empty()) k_ = other.k_;
        for (const auto& [index, c] : other.terms_) accumulate(index, c);
        return *this;
    }
    ExteriorForm& operator-=(const ExteriorForm& other) {
        require_same_space(other);
        if (terms_.empty()) k_ = other.k_;
        for (const auto& [index, c] : other.terms_) accumulate(index, -c);
        return *this;
    }
    ExteriorForm& operator*=(const Rational& t) {
        if (t == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [index, c] : terms_) c *= t;
        return *this;
    }

    friend ExteriorForm operator+(ExteriorForm a, const ExteriorForm& b) { return a += b; }
    friend ExteriorForm operator-(ExteriorForm a, const ExteriorForm& b) { return a -= b; }
    friend ExteriorForm operator*(const Rational& t, ExteriorForm a) { return a *= t; }
    friend ExteriorForm operator-(ExteriorForm a) { return a *= Rational(-1); }

    friend bool operator==(const ExteriorForm& a, const ExteriorForm& b) {
        if (a.n_ != b.n_) return false;
        if (a.terms_.empty() && b.terms_.empty()) return true;
        return a.k_ == b.k_ && a.terms_ == b.terms_;
    }

  private:
    void require_same_space(const ExteriorForm& other) const {
        if (n_ != other.n_) throw std::invalid_argument("form dimension mismatch");
        if (k_ != other.k_ && !other.terms_.empty() && !terms_.empty())
            throw std::invalid_argument("form degree mismatch");
    }

    void accumulate(const IndexTuple& index, const Rational& c) {
        if (c == 0) return;
        auto it = terms_.find(index);
        if (it == terms_.end()) {
            terms_.emplace(index, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    int n_;
    int k_;
    std::map<IndexTuple, Rational> terms_;
};

/// Wedge product. Graded-commutative, bilinear; the sign of each term pair is
/// the shuffle sign of the concatenated index tuples.
inline ExteriorForm wedge(const ExteriorForm& a, const ExteriorForm& b) {
    if (a.dimension() != b.dimension()) throw std::invalid_argument("wedge: dimension mismatch");
    ExteriorForm out(a.dimension(), a.degree() + b.degree());
    for (const auto& [ia, ca] : a.terms()) {
        for (const auto& [ib, cb] : b.terms()) {
            auto [merged, sign] = merge_tuples(ia, ib);
            if (sign == 0) continue;
            Rational c = ca * cb;
            out.add_term(merged, sign > 0 ? c : Rational(-c));
        }
    }
    return out;
}

/// Interior product iota_X. Degree -1 antiderivation; on basis forms
/// iota_{e_i} e^I = (-1)^p e^{I \ i} with p the 0-based position of i in I.
inline ExteriorForm contract(const Vector& x, const ExteriorForm& a) {
    if (x.n != a.dimension()) throw std::invalid_argument("contract: dimension mismatch");
    ExteriorForm out(a.dimension(), a.degree() > 0 ? a.degree() - 1 : 0);
    if (a.degree() == 0) return out;
    for (const auto& [index, c] : a.terms()) {
        for (int p = 0; p < index.degree(); ++p) {
            const Rational& xi = x[index[p]];
            if (xi == 0) continue;
            Rational t = c * xi;
            out.add_term(index.without_position(p), p % 2 == 0 ? t : Rational(-t));
        }
    }
    return out;
}

/// Hodge star for the frame treated as orthonormal: *(e^I) is the sign of the
/// permutation (I, I^c) of (1..n) times e^{I^c}, times the orientation.
inline ExteriorForm hodge_star(const ExteriorForm& a, int orientation = 1) {
    if (orientation != 1 && orientation != -1) throw std::invalid_argument("orientation must be +1 or -1");
    int n = a.dimension();
    if (a.degree() > n) throw std::invalid_argument("hodge_star: degree exceeds dimension");
    ExteriorForm out(n, n - a.degree());
    for (const auto& [index, c] : a.terms()) {
        IndexTuple comp = index.complement(n);
        auto [merged, sign] = merge_tuples(index, comp);
        (void)merged;
        out.add_term(comp, sign * orientation > 0 ? c : -c);
    }
    return out;
}

/// All strictly increasing k-tuples in 1..n, lexicographic. Count is C(n, k).
inline std::vector<IndexTuple> basis_forms(int n, int k) {
    if (n < 0 || n > kMaxDim || k < 0 || k > n) throw std::invalid_argument("basis_forms: need 0 <= k <= n <= 9");
    std::vector<IndexTuple> out;
    std::array<int, kMaxDim> cur{};
    auto emit = [&](auto&& self, int pos, int next) -> void {
        if (pos == k) {
            out.emplace_back(std::span<const int>(cur.data(), static_cast<std::size_t>(k)));
            return;
        }
        for (int i = next; i <= n - (k - pos - 1); ++i) {
            cur[static_cast<std::size_t>(pos)] = i;
            self(self, pos + 1, i + 1);
        }
    };
    emit(emit, 0, 1);
    return out;
}

namespace detail {

/// Exact determinant by fraction-full Gaussian elimination.
inline Rational determinant(std::vector<std::vector<Rational>> m) {
    const std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            Rational f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

}  // namespace detail

/// Evaluates a k-form on k vectors: e^I(X_1,...,X_k) = det [ (X_a)_{i_b} ].
inline Rational evaluate(const ExteriorForm& a, std::span<const Vector> args) {
    if (static_cast<int>(args.size()) != a.degree())
        throw std::invalid_argument("evaluate: argument count != degree");
    for (const auto& v : args)
        if (v.n != a.dimension()) throw std::invalid_argument("evaluate: dimension mismatch");
    Rational total = 0;
    const int k = a.degree();
    for (const auto& [index, c] : a.terms()) {
        std::vector<std::vector<Rational>> m(static_cast<std::size_t>(k),
                                             std::vector<Rational>(static_cast<std::size_t>(k)));
        for (int r = 0; r < k; ++r)
            for (int col = 0; col < k; ++col) m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] = args[static_cast<std::size_t>(r)][index[col]];
        total += c * detail::determinant(std::move(m));
    }
    return total;
}

inline Rational evaluate(const ExteriorForm& a, const Vector& x) {
    return evaluate(a, std::span<const Vector>(&x, 1));
}

/// Re-embeds a form into a larger frame (coefficients unchanged).
inline ExteriorForm embed(const ExteriorForm& a, int n) {
    if (n < a.dimension()) throw std::invalid_argument("embed: target dimension smaller");
    ExteriorForm out(n, a.degree());
    for (const auto& [index, c] : a.terms()) out.add_term(index, c);
    return out;
}

/// Restricts a form to a smaller frame; throws if any term uses a dropped index.
inline ExteriorForm restrict_to(const ExteriorForm& a, int n) {
    if (n > a.dimension()) throw std::invalid_argument("restrict_to: target dimension larger");
    ExteriorForm out(n, a.degree());
    for (const auto& [index, c] : a.terms()) {
        if (index.max_index() > n) throw std::invalid_argument("restrict_to: term uses dropped index");
        out.add_term(index, c);
    }
    return out;
}

}  // namespace cocal7
