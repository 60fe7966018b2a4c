#pragma once

#include "fusionkz/associator.hpp"
#include "fusionkz/ode.hpp"

#include <array>
#include <string>
#include <vector>

namespace fusionkz {

struct Check {
    std::string name;
    Real residual;
    Real tolerance;
    bool passed = false;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<Check> checks;

    bool passed() const;
};

struct PentagonReport {
    long level = 0;
    std::size_t tensor_dim = 0;
    /// Quotient dimensions of the five bracketings
    /// 1(2(34)), (12)(34), ((12)3)4, (1(23))4, 1((23)4).
    std::array<std::size_t, 5> quotient_dims{};
    /// Kernel transport residual of each lifted map
    /// A_{1,2,34}, A_{12,3,4}, id [x] A_{2,3,4}, A_{1,23,4}, A_{1,2,3} [x] id.
    std::array<Real, 5> transport{};
    std::array<QuotientReport, 5> associators{};
    Real residual;
    Real tolerance;

    bool passed() const;
};

/// (A [x] id) A (id [x] A) against A A on the quotient of U1 (x) U2 (x) U3 (x) U4
/// by the fully nested fusion kernel.
PentagonReport verify_pentagon(const GModulePtr &u1, const GModulePtr &u2, const GModulePtr &u3,
                               const GModulePtr &u4, long level,
                               const AssociatorParams &params = {});

/// L0 [x] U and U [x] L0 have zero kernel and identity projection, exactly,
/// for every admissible irreducible U.
SuiteReport unit_suite(const RootDatumPtr &datum, long level);

/// Series sums against Runge-Kutta transport: at zero along 3/10 -> 1/2,
/// at one along z = 7/10 -> 1/2.
SuiteReport oracle_suite(const GModulePtr &u1, const GModulePtr &u2, const GModulePtr &u3,
                         long level, const AssociatorParams &params = {});

} // namespace fusionkz
