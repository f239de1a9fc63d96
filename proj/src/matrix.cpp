#include "pvs/matrix.hpp"

#include <sstream>

namespace pvs {

Mat::Mat(RingPtr r, int rows_, int cols_) : ring(std::move(r)), rows(rows_), cols(cols_) {
    a.assign(std::size_t(rows) * std::size_t(cols), ring->zero());
}

Mat Mat::identity(RingPtr r, int n) {
    Mat m(std::move(r), n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = m.ring->one();
    return m;
}

Mat Mat::from_rows(RingPtr r, const std::vector<std::vector<Elem>>& rows) {
    Mat m(std::move(r), int(rows.size()), int(rows.at(0).size()));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) m.at(i, j) = m.ring->lift(rows[std::size_t(i)][std::size_t(j)]);
    return m;
}

Mat Mat::diag(RingPtr r, const std::vector<Elem>& d) {
    Mat m(std::move(r), int(d.size()), int(d.size()));
    for (int i = 0; i < m.rows; ++i) m.at(i, i) = m.ring->lift(d[std::size_t(i)]);
    return m;
}

Mat Mat::operator*(const Mat& o) const {
    Mat m(ring, rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            const Elem& x = at(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < o.cols; ++j) m.at(i, j) = m.at(i, j) + x * o.at(k, j);
        }
    return m;
}

Mat Mat::operator+(const Mat& o) const {
    Mat m(ring, rows, cols);
    for (std::size_t i = 0; i < a.size(); ++i) m.a[i] = a[i] + o.a[i];
    return m;
}

Mat Mat::operator-(const Mat& o) const {
    Mat m(ring, rows, cols);
    for (std::size_t i = 0; i < a.size(); ++i) m.a[i] = a[i] - o.a[i];
    return m;
}

Mat Mat::scaled(const Elem& s) const {
    Mat m(ring, rows, cols);
    for (std::size_t i = 0; i < a.size(); ++i) m.a[i] = a[i] * s;
    return m;
}

Mat Mat::transpose() const {
    Mat m(ring, cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(j, i) = at(i, j);
    return m;
}

Mat Mat::applied(const Aut& phi) const {
    Mat m(ring, rows, cols);
    for (std::size_t i = 0; i < a.size(); ++i) m.a[i] = phi.apply(a[i]);
    return m;
}

Elem Mat::det() const {
    if (rows != cols) fail(ErrorCode::MalformedInput, "determinant of a non-square matrix");
    switch (rows) {
        case 1: return at(0, 0);
        case 2: return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
        case 3:
            return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
                   at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
                   at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
        default: fail(ErrorCode::UnsupportedDegree, "determinant supports n <= 3");
    }
}

Mat Mat::inverse() const {
    Elem d = det();
    Elem dinv = d.inverse(); // throws NonUnit
    Mat adj(ring, rows, cols);
    if (rows == 1) {
        adj.at(0, 0) = ring->one();
    } else if (rows == 2) {
        adj.at(0, 0) = at(1, 1);
        adj.at(0, 1) = -at(0, 1);
        adj.at(1, 0) = -at(1, 0);
        adj.at(1, 1) = at(0, 0);
    } else {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                int r1 = (i + 1) % 3, r2 = (i + 2) % 3, c1 = (j + 1) % 3, c2 = (j + 2) % 3;
                // adjugate: cofactor with transposed indices
                adj.at(j, i) = at(r1, c1) * at(r2, c2) - at(r1, c2) * at(r2, c1);
            }
    }
    return adj.scaled(dinv);
}

bool Mat::operator==(const Mat& o) const {
    if (rows != o.rows || cols != o.cols) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == o.a[i])) return false;
    return true;
}

bool Mat::is_identity() const {
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            if (i == j && !at(i, j).is_one()) return false;
            if (i != j && !at(i, j).is_zero()) return false;
        }
    return true;
}

std::string Mat::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows; ++i) {
        if (i) os << "; ";
        for (int j = 0; j < cols; ++j) {
            if (j) os << ", ";
            os << at(i, j).str();
        }
    }
    os << "]";
    return os.str();
}

} // namespace pvs
