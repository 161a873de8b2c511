#pragma once

#include "opmodel/linalg.hpp"

#include <random>

namespace opm::test {

// Deterministic random data for property tests.
class Rng {
public:
    explicit Rng(unsigned long long seed) : gen_(seed) {}

    double real() { return normal_(gen_); }
    cplx complex() { return {normal_(gen_), normal_(gen_)}; }
    Vec vec(int n) {
        Vec v(n);
        for (int i = 0; i < n; ++i) v(i) = complex();
        return v;
    }
    Mat mat(int r, int c) {
        Mat m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m(i, j) = complex();
        return m;
    }
    // Scaled to operator norm `norm`.
    Mat contraction(int r, int c, double norm) {
        Mat m = mat(r, c);
        return m * (norm / opnorm(m));
    }

private:
    std::mt19937_64 gen_;
    std::normal_distribution<double> normal_;
};

}  // namespace opm::test
