#pragma once

// Generated by tests/oracles/generate.py; do not edit.

#include "qvcs/linalg.hpp"

namespace qvcs::oracle {

inline const cplx kQ5_00{-2.330203904119435, -0.3959263283660913};
inline const cplx kQ5_01{0.30292855855133455, -0.7164934183557468};
inline const cplx kQ5_10{-0.3029285585513344, -0.7164934183557468};
inline const cplx kQ5_11{-2.330203904119435, 0.39592632836609093};
inline constexpr double kRashbaEig0 = 0.03953136438507271;
inline constexpr double kRashbaEig1 = 0.7500000000000004;
inline constexpr double kRashbaEig2 = 0.8675248347093876;
inline constexpr double kRashbaEig3 = 1.7183994382023706;
inline constexpr double kRashbaEig4 = 1.9604686356149275;
inline constexpr double kRashbaEig5 = 2.5849028301915093;
inline constexpr double kRashbaEPlus1 = 0.039531364385072654;
inline constexpr double kRashbaTheta1 = 0.3373704711117763;
inline constexpr double kDresselhausEig0 = 0.1455996254682469;
inline constexpr double kDresselhausEig1 = 0.8;
inline constexpr double kDresselhausEig2 = 1.0944614861862583;
inline constexpr double kDresselhausEig3 = 1.8544003745317532;
inline constexpr double kLaguerre20Node0 = 0.07053988969198875;
inline constexpr double kLaguerre20Node19 = 66.52441652561575;
inline constexpr double kLaguerre20Weight0 = 0.16874680185111388;
inline constexpr double kLaguerre20Weight19 = 1.6564566124990233e-28;
inline constexpr double kPoissonTail10Mean2 = 8.308224368484213e-06;
inline const cplx kEnergyComp3Plus{-0.14309093137663964, 0.11097843022878079};
inline const cplx kEnergyComp3Minus{0.08491108949038928, 0.20083361257261598};
inline const cplx kDisplacementComp2{0.062193135110429516, 0.16356157463760512};
inline const cplx kDisplacementComp2Minus{0.12514316045570578, 0.29599140882438724};
inline const cplx kQFamilyExpectA{0.389761609600597, 0.3905656615799688};
inline constexpr double kQFamilyNorm2 = 0.522266546481236;
inline const cplx kQFamilyClosedA{0.4052258547020969, 0.3905656615799687};
inline const cplx kEnergyExpectA{0.45890531237069326, 0.17532878657086343};
inline constexpr double kUncertaintyLhs = 0.3376044262682968;
inline constexpr double kMoment7 = 1.0;

}  // namespace qvcs::oracle
