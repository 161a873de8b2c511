#pragma once

#include "opmodel/algebra.hpp"

#include <string>
#include <vector>

namespace opm {

// A finite-dimensional W*-correspondence over M, stored on an ambient
// coordinate space C^D.  For each matrix unit e_u:
//   left[u]  = phi(e_u),  right[u] = xi -> xi e_u,
//   inner[u] = G_u with <x, y> = sum_u (x^* G_u y) e_u.
// The right action is anti-multiplicative as a matrix map: R(ab) = R(b)R(a).
struct Correspondence {
    Algebra algebra;
    int dim = 0;
    std::vector<Mat> left;
    std::vector<Mat> right;
    std::vector<Mat> inner;

    Element inner_product(const Vec& x, const Vec& y) const;
    Mat left_action(const Element& a) const;
    Mat right_action(const Element& a) const;
};

struct AxiomResidual {
    std::string axiom;
    double residual;
};

struct ValidationReport {
    std::vector<AxiomResidual> axioms;
    double tol = 0.0;
    bool passed() const;
    std::string first_failure() const;
};

ValidationReport validate(const Correspondence& e, double tol = 1e-10);
void require_valid(const Correspondence& e, double tol = 1e-10);

Correspondence identity_correspondence(const Algebra& alg);
// alpha acts on coordinates of M: column u is alpha(e_u).
Correspondence from_endomorphism(const Algebra& alg, const Mat& alpha, double tol = 1e-10);
struct Edge {
    int source, range;
};
Correspondence from_graph(int vertices, const std::vector<Edge>& edges);
Correspondence free_correspondence(int n);

Correspondence direct_sum(const Correspondence& e, const Correspondence& f);

// Balanced tensor product over M.  quotient maps C^{D_E D_F} (index p*D_F+q)
// onto the coordinates of the result.
struct TensorResult {
    Correspondence product;
    Mat quotient;
};
TensorResult tensor_with_quotient(const Correspondence& e, const Correspondence& f, double eps_null = 1e-10);
Correspondence tensor(const Correspondence& e, const Correspondence& f, double eps_null = 1e-10);

// The Hilbert space E (x)_sigma H.  Ambient index p*dim(H)+h.
struct LocalizedSpace {
    int source_dim = 0;  // D
    int h_dim = 0;
    int dim = 0;
    Mat factor;  // dim x D*h_dim, factor^* factor = Gram
    Mat lift;    // right inverse of factor
    Representation rep;  // phi(.) (x) I on the quotient
    Mat gram;

    Mat create(int p) const;  // h -> e_p (x) h
    Mat create(const Vec& xi) const;  // L_xi
};

Mat localization_gram(const Correspondence& e, const Representation& sigma);
LocalizedSpace localize(const Correspondence& e, const Representation& sigma, double eps_null = 1e-10,
                        double eps_psd = 1e-9);

// I_E (x) X : E (x)_{from} H -> E (x)_{to} H' for an intertwiner X : H -> H'.
Mat ampliate(const LocalizedSpace& to, const Mat& x, const LocalizedSpace& from);

}  // namespace opm
