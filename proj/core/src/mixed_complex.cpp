#include "asymcyc/mixed_complex.hpp"

#include <nlohmann/json.hpp>

#include <sstream>
#include <stdexcept>

namespace asymcyc::mix {

RatMatrix RatMatrix::identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool RatMatrix::is_zero() const {
    for (const auto& v : a_)
        if (v != 0) return false;
    return true;
}

RatMatrix RatMatrix::mul(const RatMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("RatMatrix::mul: shape mismatch");
    RatMatrix out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rational& v = at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < rhs.cols_; ++j) out.at(i, j) += v * rhs.at(k, j);
        }
    return out;
}

RatMatrix RatMatrix::add(const RatMatrix& rhs, const Rational& scale) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("RatMatrix::add: shape mismatch");
    RatMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] + scale * rhs.a_[i];
    return out;
}

namespace {
// row-reduce a copy; returns pivot columns
std::vector<int> row_echelon(RatMatrix& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int p = -1;
        for (int i = r; i < m.rows(); ++i)
            if (m.at(i, c) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
        Rational inv = Rational(1) / m.at(r, c);
        for (int j = 0; j < m.cols(); ++j) m.at(r, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r) continue;
            Rational f = m.at(i, c);
            if (f == 0) continue;
            for (int j = 0; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}
}  // namespace

int RatMatrix::rank() const {
    RatMatrix copy = *this;
    return static_cast<int>(row_echelon(copy).size());
}

RatMatrix RatMatrix::column_space_basis() const {
    RatMatrix copy = *this;
    auto pivots = row_echelon(copy);
    RatMatrix basis(rows_, static_cast<int>(pivots.size()));
    for (std::size_t k = 0; k < pivots.size(); ++k)
        for (int i = 0; i < rows_; ++i) basis.at(i, static_cast<int>(k)) = at(i, pivots[k]);
    return basis;
}

RatMatrix RatMatrix::solve(const RatMatrix& rhs) const {
    if (rhs.rows() != rows_) throw std::invalid_argument("RatMatrix::solve: shape mismatch");
    // eliminate on [self | rhs]
    RatMatrix aug(rows_, cols_ + rhs.cols());
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        for (int j = 0; j < rhs.cols(); ++j) aug.at(i, cols_ + j) = rhs.at(i, j);
    }
    row_echelon(aug);
    RatMatrix out(cols_, rhs.cols());
    // after full reduction, row k corresponds to pivot column k (full column rank)
    int row = 0;
    for (int c = 0; c < cols_; ++c) {
        if (row < rows_ && aug.at(row, c) == 1) {
            bool pivot = true;
            for (int cc = 0; cc < c; ++cc)
                if (aug.at(row, cc) != 0) pivot = false;
            if (pivot) {
                for (int j = 0; j < rhs.cols(); ++j) out.at(c, j) = aug.at(row, cols_ + j);
                ++row;
                continue;
            }
        }
        throw std::invalid_argument("RatMatrix::solve: matrix lacks full column rank");
    }
    // consistency: remaining rows of the rhs block must vanish
    for (int i = row; i < rows_; ++i)
        for (int j = 0; j < rhs.cols(); ++j)
            if (aug.at(i, cols_ + j) != 0)
                throw std::invalid_argument("RatMatrix::solve: inconsistent system");
    return out;
}

RatMatrix RatMatrix::complement(int ambient) const {
    if (rows_ != ambient) throw std::invalid_argument("RatMatrix::complement: ambient mismatch");
    // greedily extend the basis columns by coordinate vectors
    RatMatrix cur = *this;
    std::vector<int> chosen;
    for (int e = 0; e < ambient && cur.cols() < ambient; ++e) {
        RatMatrix trial(ambient, cur.cols() + 1);
        for (int i = 0; i < ambient; ++i)
            for (int j = 0; j < cur.cols(); ++j) trial.at(i, j) = cur.at(i, j);
        trial.at(e, cur.cols()) = 1;
        if (trial.rank() == cur.cols() + 1) {
            cur = trial;
            chosen.push_back(e);
        }
    }
    if (cur.cols() != ambient) throw std::logic_error("RatMatrix::complement: failed to extend");
    RatMatrix comp(ambient, static_cast<int>(chosen.size()));
    for (std::size_t k = 0; k < chosen.size(); ++k) comp.at(chosen[k], static_cast<int>(k)) = 1;
    return comp;
}

MixedComplexPresentation::Verification MixedComplexPresentation::verify() const {
    Verification v;
    auto fail = [&v](std::string msg) {
        v.pass = false;
        v.failures.push_back(std::move(msg));
    };
    int D = top_degree();
    for (int n = 0; n + 1 < D; ++n)
        if (!b[n + 1].mul(b[n]).is_zero()) fail("b b != 0 at degree " + std::to_string(n));
    for (int n = 2; n <= D; ++n)
        if (!B[n - 1].mul(B[n]).is_zero()) fail("B B != 0 at degree " + std::to_string(n));
    for (int n = 1; n <= D; ++n) {
        // b_{n-1} B_n + B_{n+1} b_n = 0 (terms present only inside the range)
        RatMatrix acc(dims[n], dims[n]);
        bool any = false;
        if (n - 1 >= 0 && n - 1 < static_cast<int>(b.size())) {
            acc = acc.add(b[n - 1].mul(B[n]));
            any = true;
        }
        if (n < static_cast<int>(b.size()) && n + 1 <= D) {
            acc = acc.add(B[n + 1].mul(b[n]));
            any = true;
        }
        if (any && !acc.is_zero()) fail("bB + Bb != 0 at degree " + std::to_string(n));
    }
    return v;
}

int betti(const MixedComplexPresentation& x, int m, Direction dir) {
    int D = x.top_degree();
    if (m < 0 || m > D) throw std::invalid_argument("betti: degree out of range");
    if (dir == Direction::B_raising) {
        int rank_out = (m < D) ? x.b[m].rank() : 0;
        int rank_in = (m >= 1) ? x.b[m - 1].rank() : 0;
        return x.dims[m] - rank_out - rank_in;
    }
    int rank_out = (m >= 1) ? x.B[m].rank() : 0;
    int rank_in = (m < D) ? x.B[m + 1].rank() : 0;
    return x.dims[m] - rank_out - rank_in;
}

MixedComplexPresentation good_truncation(const MixedComplexPresentation& x, int n, Side side) {
    int D = x.top_degree();
    if (n < 0 || n > D) throw std::invalid_argument("good_truncation: degree out of range");
    if (n == D) {
        if (side == Side::Below) return x;  // truncating at the top changes nothing
        MixedComplexPresentation out;       // nothing above the top degree
        out.dims.assign(static_cast<std::size_t>(D) + 1, 0);
        out.b.assign(static_cast<std::size_t>(D), RatMatrix(0, 0));
        out.B.assign(static_cast<std::size_t>(D) + 1, RatMatrix(0, 0));
        return out;
    }
    RatMatrix image_basis = x.b[n].column_space_basis();
    int r = image_basis.cols();
    if (side == Side::Below) {
        MixedComplexPresentation out;
        out.dims.assign(x.dims.begin(), x.dims.begin() + n + 1);
        out.dims.push_back(r);  // degree n+1 is Im(b_n)
        out.b.assign(x.b.begin(), x.b.begin() + n);
        out.b.push_back(image_basis.solve(x.b[n]));  // b_n in image coordinates
        out.B.assign(x.B.begin(), x.B.begin() + n + 1);
        out.B.push_back(x.B[n + 1].mul(image_basis));  // B restricted to the image
        return out;
    }
    // Side::Above: degree n+1 becomes X_{n+1}/Im(b_n); below is zero.
    RatMatrix comp = image_basis.complement(x.dims[n + 1]);
    int q = comp.cols();
    // full change of basis [image | comp]; quotient coordinates are the tail of
    // the solution of [U|C] w = v
    RatMatrix full(x.dims[n + 1], r + q);
    for (int i = 0; i < x.dims[n + 1]; ++i) {
        for (int j = 0; j < r; ++j) full.at(i, j) = image_basis.at(i, j);
        for (int j = 0; j < q; ++j) full.at(i, r + j) = comp.at(i, j);
    }
    RatMatrix coords = full.solve(RatMatrix::identity(x.dims[n + 1]));  // (r+q) x dim
    RatMatrix proj(q, x.dims[n + 1]);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < x.dims[n + 1]; ++j) proj.at(i, j) = coords.at(r + i, j);

    MixedComplexPresentation out;
    out.dims.assign(x.dims.size(), 0);
    out.dims[n + 1] = q;
    for (int m = n + 2; m <= D; ++m) out.dims[m] = x.dims[m];
    out.b.assign(x.b.size(), RatMatrix());
    out.B.assign(x.B.size(), RatMatrix());
    for (int m = 0; m < static_cast<int>(x.b.size()); ++m) {
        if (m < n + 1) out.b[m] = RatMatrix(out.dims[m + 1], out.dims[m]);
        else if (m == n + 1) out.b[m] = x.b[m].mul(comp);  // induced on representatives
        else out.b[m] = x.b[m];
    }
    for (int m = 1; m <= D; ++m) {
        if (m < n + 1) out.B[m] = RatMatrix(out.dims[m - 1], out.dims[m]);
        else if (m == n + 1) out.B[m] = RatMatrix(0, q);  // lands in degree n = 0
        else if (m == n + 2) out.B[m] = proj.mul(x.B[m]);  // project into the quotient
        else out.B[m] = x.B[m];
    }
    return out;
}

std::string to_json(const MixedComplexPresentation& x) {
    nlohmann::ordered_json j;
    j["dims"] = x.dims;
    auto mat = [](const RatMatrix& m) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (int i = 0; i < m.rows(); ++i) {
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (int c = 0; c < m.cols(); ++c) row.push_back(rat_str(m.at(i, c)));
            rows.push_back(row);
        }
        return rows;
    };
    j["b"] = nlohmann::ordered_json::array();
    for (const auto& m : x.b) j["b"].push_back(mat(m));
    j["B"] = nlohmann::ordered_json::array();
    for (std::size_t n = 1; n < x.B.size(); ++n) j["B"].push_back(mat(x.B[n]));
    return j.dump(2);
}

MixedComplexPresentation presentation_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    MixedComplexPresentation x;
    x.dims = j.at("dims").get<std::vector<int>>();
    int D = x.top_degree();
    auto mat = [](const nlohmann::json& rows, int want_rows, int want_cols) {
        RatMatrix m(want_rows, want_cols);
        if (static_cast<int>(rows.size()) != want_rows)
            throw std::invalid_argument("presentation: matrix row count mismatch");
        for (int i = 0; i < want_rows; ++i) {
            if (static_cast<int>(rows[i].size()) != want_cols)
                throw std::invalid_argument("presentation: matrix column count mismatch");
            for (int c = 0; c < want_cols; ++c)
                m.at(i, c) = parse_rational(rows[i][c].get<std::string>());
        }
        return m;
    };
    const auto& jb = j.at("b");
    const auto& jB = j.at("B");
    if (static_cast<int>(jb.size()) != D || static_cast<int>(jB.size()) != D)
        throw std::invalid_argument("presentation: differential count mismatch");
    x.b.reserve(D);
    for (int n = 0; n < D; ++n) x.b.push_back(mat(jb[n], x.dims[n + 1], x.dims[n]));
    x.B.resize(1);
    for (int n = 1; n <= D; ++n) x.B.push_back(mat(jB[n - 1], x.dims[n - 1], x.dims[n]));
    return x;
}

MixedComplexPresentation simplex_vertex_presentation() {
    // degree 0: basepoint *; degree 1: vertices (0), (1) of Delta^1.
    // b(*) = (0) - (1); B((0)) = B((1)) = 2* (exact values of the module maps).
    // Not B-closed as a 2-degree mixed complex (the simplex continues upward);
    // used for exact rank cross-checks only.
    MixedComplexPresentation x;
    x.dims = {1, 2};
    RatMatrix b0(2, 1);
    b0.at(0, 0) = 1;
    b0.at(1, 0) = -1;
    x.b = {b0};
    RatMatrix B1(1, 2);
    B1.at(0, 0) = 2;
    B1.at(0, 1) = 2;
    x.B = {RatMatrix(), B1};
    return x;
}

}  // namespace asymcyc::mix
