#pragma once

#include "opmodel/fock.hpp"

#include <vector>

namespace opm {

// Gram of E (x)_sigma H on the ambient index p*dim(H)+i, by a direct double
// loop over <e_p, e_q> and sigma.
Mat oracle_gram(const Correspondence& e, const Representation& sigma);

// {X : X g = g X for every generator}, by a dense null space of the stacked
// Kronecker system.  The cap bounds the number of unknowns n^2.
struct OracleCommutant {
    Mat basis;  // columns are vec(X), column-major
    int dim = 0;
};
OracleCommutant oracle_commutant(const std::vector<Mat>& generators, int cap = 200);

// T_{e_p} (x) I and phi_inf(e_u) (x) I on the truncated tower.
std::vector<Mat> induced_generators(const FockTower& tower);

}  // namespace opm
