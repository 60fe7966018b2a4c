#pragma once

#include "fusionkz/execution.hpp"
#include "fusionkz/lie_core.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace fusionkz {

/// Finite-dimensional module: exact action matrices for every element of
/// datum->algebra_basis, on a basis of weight vectors.
struct GModule {
    RootDatumPtr datum;
    std::size_t dim = 0;
    std::vector<Weight> weights;
    std::vector<RMatrix> action;
    std::string provenance;

    const RMatrix &x_theta() const { return action[datum->x_theta]; }

    /// Action of the algebra element with the given basis coordinates.
    RMatrix act(const RVector &coords) const;
    /// Action of dual_basis[a].
    RMatrix act_dual(std::size_t a) const;
};

using GModulePtr = std::shared_ptr<const GModule>;

/// Exact basis of a subspace of a module's coordinate space, in reduced
/// echelon form, with the complement spanned by the non-pivot standard basis
/// vectors. For weight-vector ambient bases the complement is weight
/// homogeneous.
struct SubspaceBasis {
    std::size_t ambient_dim = 0;
    std::vector<RVector> vectors;
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> complement;
    /// complement.size() x ambient_dim projection onto the complement along
    /// the subspace, in complement coordinates.
    RMatrix projection;
    /// ambient_dim x complement.size() inclusion of the complement.
    RMatrix section;

    std::size_t dim() const { return vectors.size(); }
};

/// Builds the subspace data for the span of arbitrary vectors.
SubspaceBasis make_subspace(const std::vector<RVector> &vectors, std::size_t ambient_dim);

GModule trivial_module(const RootDatumPtr &datum);
GModule defining_module(const RootDatumPtr &datum);
/// k-th exterior power of the defining module, realizing L_{omega_k} in type A.
GModule fundamental_module(const RootDatumPtr &datum, std::size_t k);

GModule tensor(const GModule &m1, const GModule &m2, Execution exec = Execution::serial);

/// Cyclic module generated by the highest-weight vector of weight lambda in
/// a tensor product of fundamental modules.
GModule irreducible(const RootDatumPtr &datum, const Weight &lambda);

/// Joint kernel of the raising operators, grouped by weight; each basis is
/// in reduced echelon form.
std::map<Weight, std::vector<RVector>> singular_vectors(const GModule &m);

/// Highest weight -> multiplicity.
std::map<Weight, std::size_t> decompose(const GModule &m);

/// Smallest invariant subspace containing the seeds.
SubspaceBasis submodule_closure(const GModule &m, const std::vector<RVector> &seeds);

/// Module structure on an invariant subspace, in the coordinates of its
/// echelon basis.
GModule restrict_to(const GModule &m, const SubspaceBasis &s);

struct Quotient {
    GModule module;
    RMatrix projection; ///< ambient -> quotient coordinates
    RMatrix section;    ///< quotient coordinates -> ambient (complement)
};

/// Quotient by an invariant subspace; throws InvarianceError otherwise.
Quotient quotient(const GModule &m, const SubspaceBasis &s);

bool is_invariant(const GModule &m, const SubspaceBasis &s);

/// Sum_a action(b_a) action(b^a).
RMatrix casimir_matrix(const GModule &m);

/// Exact check of action([b_a, b_b]) = [action(b_a), action(b_b)].
bool satisfies_brackets(const GModule &m);

/// f : m -> n intertwines the actions exactly.
bool is_homomorphism(const RMatrix &f, const GModule &m, const GModule &n);

} // namespace fusionkz
