#include "sparse/linear_solve.hpp"

#include <utility>

namespace sparse {

namespace {

// Reduces a in place to row echelon form; returns pivot columns in row order.
std::vector<std::size_t> echelon(FieldMatrix& a, std::vector<FieldElement>* rhs, FieldElement* det) {
    std::vector<std::size_t> pivots;
    if (a.empty()) return pivots;
    const std::size_t rows = a.size(), cols = a[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        if (piv != r) {
            std::swap(a[piv], a[r]);
            if (rhs) std::swap((*rhs)[piv], (*rhs)[r]);
            if (det) *det = -*det;
        }
        const FieldElement inv = a[r][c].inverse();
        if (det) *det = *det * a[r][c];
        for (std::size_t k = c; k < cols; ++k) a[r][k] = a[r][k] * inv;
        if (rhs) (*rhs)[r] = (*rhs)[r] * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            const FieldElement factor = a[i][c];
            for (std::size_t k = c; k < cols; ++k) a[i][k] = a[i][k] - factor * a[r][k];
            if (rhs) (*rhs)[i] = (*rhs)[i] - factor * (*rhs)[r];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

std::optional<std::vector<FieldElement>> solve_linear(FieldMatrix a, std::vector<FieldElement> b) {
    if (a.size() != b.size()) throw PreconditionError("solve_linear: dimension mismatch");
    if (a.empty()) return std::vector<FieldElement>{};
    const std::size_t cols = a[0].size();
    const GaloisField& f = b[0].field();
    auto pivots = echelon(a, &b, nullptr);
    for (std::size_t i = pivots.size(); i < a.size(); ++i) {
        if (!b[i].is_zero()) return std::nullopt;
    }
    std::vector<FieldElement> x(cols, f.zero());
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = b[i];
    return x;
}

FieldElement determinant(FieldMatrix a) {
    if (a.empty()) throw PreconditionError("determinant: empty matrix");
    if (a.size() != a[0].size()) throw PreconditionError("determinant: matrix is not square");
    FieldElement det = a[0][0].field().one();
    auto pivots = echelon(a, nullptr, &det);
    if (pivots.size() < a.size()) return det.field().zero();
    return det;
}

std::size_t rank(FieldMatrix a) { return echelon(a, nullptr, nullptr).size(); }

}  // namespace sparse
