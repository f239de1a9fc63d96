#pragma once

#include <vector>

#include "pvs/ring.hpp"

namespace pvs {

/// Small dense matrix over a ring (n <= 3 for determinants and inverses).
struct Mat {
    RingPtr ring;
    int rows = 0, cols = 0;
    std::vector<Elem> a; // row-major

    Mat() = default;
    Mat(RingPtr r, int rows_, int cols_);

    static Mat identity(RingPtr r, int n);
    static Mat from_rows(RingPtr r, const std::vector<std::vector<Elem>>& rows);
    static Mat diag(RingPtr r, const std::vector<Elem>& d);

    Elem& at(int i, int j) { return a[std::size_t(i) * std::size_t(cols) + std::size_t(j)]; }
    const Elem& at(int i, int j) const { return a[std::size_t(i) * std::size_t(cols) + std::size_t(j)]; }

    Mat operator*(const Mat& o) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat scaled(const Elem& s) const;
    Mat transpose() const;
    Mat applied(const Aut& phi) const; // entrywise
    Elem det() const;
    Mat inverse() const; // throws NonUnit when det is not a unit
    bool operator==(const Mat& o) const;
    bool is_identity() const;

    std::string str() const;
};

} // namespace pvs
