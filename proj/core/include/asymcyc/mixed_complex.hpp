#pragma once

#include <string>
#include <vector>

#include "asymcyc/rational.hpp"

namespace asymcyc::mix {

/// Dense matrix over exact rationals. A map X -> Y with dim X = cols,
/// dim Y = rows, acting on column vectors.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols) {}

    static RatMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& at(int r, int c) { return a_[std::size_t(r) * cols_ + c]; }
    const Rational& at(int r, int c) const { return a_[std::size_t(r) * cols_ + c]; }

    bool is_zero() const;
    RatMatrix mul(const RatMatrix& rhs) const;
    RatMatrix add(const RatMatrix& rhs, const Rational& scale = Rational(1)) const;

    int rank() const;
    /// basis of the column space, as columns
    RatMatrix column_space_basis() const;
    /// solve self * Y = rhs (self with full column rank); throws if inconsistent
    RatMatrix solve(const RatMatrix& rhs) const;
    /// columns of the identity extending the given full-column-rank basis to all of Q^rows
    RatMatrix complement(int ambient) const;

    friend bool operator==(const RatMatrix& x, const RatMatrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

/// Finite presentation of a mixed complex: degreewise dimensions with exact
/// matrices b_n : X_n -> X_{n+1} and B_n : X_n -> X_{n-1}.
struct MixedComplexPresentation {
    std::vector<int> dims;        // degrees 0..D
    std::vector<RatMatrix> b;     // b[n], n = 0..D-1 (dims[n+1] x dims[n])
    std::vector<RatMatrix> B;     // B[n], n = 1..D   (dims[n-1] x dims[n]); B[0] empty

    int top_degree() const { return static_cast<int>(dims.size()) - 1; }

    struct Verification {
        bool pass = true;
        std::vector<std::string> failures;  // "b b != 0 at degree n" etc.
    };
    /// b b = 0, B B = 0, bB + Bb = 0, exact matrix identities
    Verification verify() const;
};

enum class Direction { B_raising, ConnesB_lowering };
enum class Side { Below, Above };

/// dim ker - rank of incoming differential, exact rational ranks.
/// Direction::B_raising: H_m = ker(b_m)/im(b_{m-1});
/// Direction::ConnesB_lowering: H_m = ker(B_m)/im(B_{m+1}).
int betti(const MixedComplexPresentation& x, int m, Direction dir);

/// Good truncation at degree n. Side::Below keeps degrees <= n with Im(b_n)
/// at degree n+1; Side::Above keeps the quotient X_{n+1}/Im(b_n) at degree
/// n+1 and everything higher (lower degrees zeroed, absolute grading kept).
MixedComplexPresentation good_truncation(const MixedComplexPresentation& x, int n, Side side);

// JSON round trip (degree list + matrices as nested arrays of "p/q" strings)
std::string to_json(const MixedComplexPresentation& x);
MixedComplexPresentation presentation_from_json(const std::string& text);

/// Vertex presentation of the simplex module: degree 0 spans the basepoint,
/// degree 1 spans the two vertices (0), (1) of Delta^1; b and B restricted.
MixedComplexPresentation simplex_vertex_presentation();

}  // namespace asymcyc::mix
