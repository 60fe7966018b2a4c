#pragma once

#include "fusionkz/repr.hpp"

#include <map>
#include <set>
#include <vector>

namespace fusionkz {

/// U1 (x) U2 modulo the level-l fusion kernel.
struct FusionProduct {
    GModulePtr first;
    GModulePtr second;
    long level = 0;
    GModule tensor;       ///< U1 (x) U2
    SubspaceBasis kernel; ///< W^(l)_{U1,U2} inside `tensor`
    GModule result;       ///< the quotient, on complement coordinates
    RMatrix projection;   ///< tensor -> result
    RMatrix section;      ///< result -> tensor (complement inclusion)
};

/// action(x_theta)^(level+1) == 0.
bool in_category(const GModule &m, long level);

/// Submodule generated by v (x) x_theta^(l - <lambda,theta> + 1) w over
/// singular vectors v of weight lambda in U1 and basis vectors w of U2.
SubspaceBasis fusion_kernel(const GModule &u1, const GModule &u2, long level);

FusionProduct fuse(const GModulePtr &u1, const GModulePtr &u2, long level);
FusionProduct fuse(const GModule &u1, const GModule &u2, long level);

/// Truncated Clebsch-Gordan rule for sl2 at level l, labels in units of omega.
std::set<long> sl2_fusion_oracle(long level, long a, long b);

struct FusionTable {
    long level = 0;
    std::vector<Weight> weights;
    /// entries[i][j] : nu -> N^nu_{weights[i], weights[j]}
    std::vector<std::vector<std::map<Weight, std::size_t>>> entries;
};

FusionTable fusion_table(const RootDatumPtr &datum, long level,
                         Execution exec = Execution::serial);

/// Map (U1 [x] U2) -> (U1' [x] U2') induced by module maps f1 : U1 -> U1'
/// and f2 : U2 -> U2'.
RMatrix induced_morphism(const FusionProduct &source, const FusionProduct &target,
                         const RMatrix &f1, const RMatrix &f2);

} // namespace fusionkz
