#include "gtorsion/paperlab.hpp"

#include "json.hpp"

#include <optional>

namespace gtorsion {

namespace {

// Every comparator names the engine pipeline a printed value is checked
// against. "Cor*" values are instances of the comoving closed forms (the
// published formulas they are cited from); everything else comes from the
// general derivation chain.
enum class Cmp {
    AltFirst,        // anti-symmetric first-kind connection component
    AltFirstZeros,   // every component outside the printed table
    AltRaised,       // anti-symmetric raised connection component
    AltRaisedZeros,
    GammaGamma,      // G^c_{v a d} G^d_{v b c}
    GammaGammaZeros,
    TT,              // S_ab = T^c_{ad} T^d_{bc}
    TTZeros,
    GTT,             // g^{ab} S_ab
    ScalarTorsionGap,  // kind-0 scalar minus torsion-free scalar
    RicciK5Gap,        // kind-5 Ricci minus torsion-free Ricci
    ScalarK5Gap,       // kind-5 scalar minus torsion-free scalar
    Stress,            // stress-energy component, general formula
    CorP,              // closed-form comoving pressure
    CorRho,            // closed-form comoving density
    CorOmega,          // closed-form state parameter
};

struct Entry {
    const char* case_id;
    const char* quantity;
    const char* label;
    Cmp cmp;
    int i, j, k;
    const char* printed;
    bool conflict;  // recorded inconsistency of the source text itself
    const char* note;
};

constexpr int kManifestVersion = 1;

// clang-format off
const Entry kManifest[] = {
    // ---- general ansatz: anti-symmetric connection of the first kind ----
    {"ansatz_general", "Gamma_{0.v12}", "eq:Gammacovariantantisim", Cmp::AltFirst, 0, 1, 2, "-n3'(t)/2", false, ""},
    {"ansatz_general", "Gamma_{0.v21}", "eq:Gammacovariantantisim", Cmp::AltFirst, 0, 2, 1, "n3'(t)/2", false, ""},
    {"ansatz_general", "Gamma_{1.v02}", "eq:Gammacovariantantisim", Cmp::AltFirst, 1, 0, 2, "n3'(t)/2", false, ""},
    {"ansatz_general", "Gamma_{1.v20}", "eq:Gammacovariantantisim", Cmp::AltFirst, 1, 2, 0, "-n3'(t)/2", false, ""},
    {"ansatz_general", "Gamma_{2.v01}", "eq:Gammacovariantantisim", Cmp::AltFirst, 2, 0, 1, "-n3'(t)/2", false, ""},
    {"ansatz_general", "Gamma_{2.v10}", "eq:Gammacovariantantisim", Cmp::AltFirst, 2, 1, 0, "n3'(t)/2", false, ""},
    {"ansatz_general", "Gamma_{0.v13}", "eq:Gammacovariantantisim", Cmp::AltFirst, 0, 1, 3, "-n4'(t)/2", false, ""},
    {"ansatz_general", "Gamma_{0.v31}", "eq:Gammacovariantantisim", Cmp::AltFirst, 0, 3, 1, "n4'(t)/2", false, ""},
    {"ansatz_general", "Gamma_{1.v03}", "eq:Gammacovariantantisim", Cmp::AltFirst, 1, 0, 3, "n4'(t)/2", false, ""},
    {"ansatz_general", "Gamma_{1.v30}", "eq:Gammacovariantantisim", Cmp::AltFirst, 1, 3, 0, "-n4'(t)/2", false, ""},
    {"ansatz_general", "Gamma_{3.v01}", "eq:Gammacovariantantisim", Cmp::AltFirst, 3, 0, 1, "-n4'(t)/2", false, ""},
    {"ansatz_general", "Gamma_{3.v10}", "eq:Gammacovariantantisim", Cmp::AltFirst, 3, 1, 0, "n4'(t)/2", false, ""},
    {"ansatz_general", "Gamma_{0.v23}", "eq:Gammacovariantantisim", Cmp::AltFirst, 0, 2, 3, "-n5'(t)/2", false, ""},
    {"ansatz_general", "Gamma_{0.v32}", "eq:Gammacovariantantisim", Cmp::AltFirst, 0, 3, 2, "n5'(t)/2", false, ""},
    {"ansatz_general", "Gamma_{2.v03}", "eq:Gammacovariantantisim", Cmp::AltFirst, 2, 0, 3, "n5'(t)/2", false, ""},
    {"ansatz_general", "Gamma_{2.v30}", "eq:Gammacovariantantisim", Cmp::AltFirst, 2, 3, 0, "-n5'(t)/2", false, ""},
    {"ansatz_general", "Gamma_{3.v02}", "eq:Gammacovariantantisim", Cmp::AltFirst, 3, 0, 2, "-n5'(t)/2", false, ""},
    {"ansatz_general", "Gamma_{3.v20}", "eq:Gammacovariantantisim", Cmp::AltFirst, 3, 2, 0, "n5'(t)/2", false, ""},
    {"ansatz_general", "Gamma_{i.vjk} remaining components", "eq:Gammacovariantantisim", Cmp::AltFirstZeros, -1, -1, -1, "0", false, ""},

    // ---- general ansatz: anti-symmetric raised connection ----
    {"ansatz_general", "Gamma^0_{v12}", "eq:Gammacovariantantisim (raised block)", Cmp::AltRaised, 0, 1, 2, "-n3'(t)/(2*s0(t))", false, ""},
    {"ansatz_general", "Gamma^0_{v21}", "eq:Gammacovariantantisim (raised block)", Cmp::AltRaised, 0, 2, 1, "n3'(t)/(2*s0(t))", false, ""},
    {"ansatz_general", "Gamma^0_{v13}", "eq:Gammacovariantantisim (raised block)", Cmp::AltRaised, 0, 1, 3, "-n4'(t)/(2*s0(t))", false, ""},
    {"ansatz_general", "Gamma^0_{v31}", "eq:Gammacovariantantisim (raised block)", Cmp::AltRaised, 0, 3, 1, "n4'(t)/(2*s0(t))", false, ""},
    {"ansatz_general", "Gamma^0_{v23}", "eq:Gammacovariantantisim (raised block)", Cmp::AltRaised, 0, 2, 3, "-n5'(t)/(2*s0(t))", false, ""},
    {"ansatz_general", "Gamma^0_{v32}", "eq:Gammacovariantantisim (raised block)", Cmp::AltRaised, 0, 3, 2, "n5'(t)/(2*s0(t))", false, ""},
    {"ansatz_general", "Gamma^1_{v20}", "eq:Gammacovariantantisim (raised block)", Cmp::AltRaised, 1, 2, 0, "-n3'(t)/(2*s1(t))", false, ""},
    {"ansatz_general", "Gamma^1_{v02}", "eq:Gammacovariantantisim (raised block)", Cmp::AltRaised, 1, 0, 2, "n3'(t)/(2*s1(t))", false, ""},
    {"ansatz_general", "Gamma^1_{v30}", "eq:Gammacovariantantisim (raised block)", Cmp::AltRaised, 1, 3, 0, "-n4'(t)/(2*s1(t))", false, ""},
    {"ansatz_general", "Gamma^1_{v03}", "eq:Gammacovariantantisim (raised block)", Cmp::AltRaised, 1, 0, 3, "n4'(t)/(2*s1(t))", false, ""},
    {"ansatz_general", "Gamma^2_{v01}", "eq:Gammacovariantantisim (raised block)", Cmp::AltRaised, 2, 0, 1, "-n3'(t)/(2*s2(t))", false, ""},
    {"ansatz_general", "Gamma^2_{v10}", "eq:Gammacovariantantisim (raised block)", Cmp::AltRaised, 2, 1, 0, "n3'(t)/(2*s2(t))", false, ""},
    {"ansatz_general", "Gamma^2_{v30}", "eq:Gammacovariantantisim (raised block)", Cmp::AltRaised, 2, 3, 0, "-n5'(t)/(2*s2(t))", false, ""},
    {"ansatz_general", "Gamma^2_{v03}", "eq:Gammacovariantantisim (raised block)", Cmp::AltRaised, 2, 0, 3, "n5'(t)/(2*s2(t))", false, ""},
    {"ansatz_general", "Gamma^3_{v01}", "eq:Gammacovariantantisim (raised block)", Cmp::AltRaised, 3, 0, 1, "-n4'(t)/(2*s3(t))", false, ""},
    {"ansatz_general", "Gamma^3_{v10}", "eq:Gammacovariantantisim (raised block)", Cmp::AltRaised, 3, 1, 0, "n4'(t)/(2*s3(t))", false, ""},
    {"ansatz_general", "Gamma^3_{v02}", "eq:Gammacovariantantisim (raised block)", Cmp::AltRaised, 3, 0, 2, "-n5'(t)/(2*s3(t))", false, ""},
    {"ansatz_general", "Gamma^3_{v20}", "eq:Gammacovariantantisim (raised block)", Cmp::AltRaised, 3, 2, 0, "n5'(t)/(2*s3(t))", false, ""},
    {"ansatz_general", "Gamma^i_{vjk} remaining components", "eq:Gammacovariantantisim (raised block)", Cmp::AltRaisedZeros, -1, -1, -1, "0", false, ""},

    // ---- general ansatz: connection products ----
    {"ansatz_general", "GammaGamma_00", "eq:genGammaGamma11", Cmp::GammaGamma, 0, 0, -1, "-(n3'(t)^2/(s1(t)*s2(t)) + n4'(t)^2/(s1(t)*s3(t)) + n5'(t)^2/(s2(t)*s3(t)))/2", false, ""},
    {"ansatz_general", "GammaGamma_11", "eq:genGammaGamma22", Cmp::GammaGamma, 1, 1, -1, "-(n3'(t)^2/(s0(t)*s2(t)) + n4'(t)^2/(s0(t)*s3(t)))/2", false, ""},
    {"ansatz_general", "GammaGamma_12", "eq:genGammaGamma23", Cmp::GammaGamma, 1, 2, -1, "-n4'(t)*n5'(t)/(2*s0(t)*s3(t))", false, ""},
    {"ansatz_general", "GammaGamma_13", "eq:genGammaGamma24", Cmp::GammaGamma, 1, 3, -1, "n3'(t)*n5'(t)/(2*s0(t)*s2(t))", false, ""},
    {"ansatz_general", "GammaGamma_22", "eq:genGammaGamma33", Cmp::GammaGamma, 2, 2, -1, "-(n3'(t)^2/(s0(t)*s1(t)) + n5'(t)^2/(s0(t)*s3(t)))/2", false, ""},
    {"ansatz_general", "GammaGamma_23", "eq:genGammaGamma34", Cmp::GammaGamma, 2, 3, -1, "-n3'(t)*n4'(t)/(2*s0(t)*s1(t))", false, ""},
    {"ansatz_general", "GammaGamma_33", "eq:genGammaGamma44", Cmp::GammaGamma, 3, 3, -1, "-(n4'(t)^2/(s0(t)*s1(t)) + n5'(t)^2/(s0(t)*s2(t)))/2", false, ""},
    {"ansatz_general", "GammaGamma_0i", "eq:genGammaGamma11 (vanishing entries)", Cmp::GammaGammaZeros, -1, -1, -1, "0", false, ""},

    // ---- general ansatz: torsion products and invariant ----
    {"ansatz_general", "TT_00", "eq:TT11", Cmp::TT, 0, 0, -1, "-2*s0(t)*(s3(t)*n3'(t)^2 + s2(t)*n4'(t)^2 + s1(t)*n5'(t)^2)/(s0(t)*s1(t)*s2(t)*s3(t))", false, ""},
    {"ansatz_general", "TT_11", "eq:TT22", Cmp::TT, 1, 1, -1, "-2*s1(t)*(s3(t)*n3'(t)^2 + s2(t)*n4'(t)^2)/(s0(t)*s1(t)*s2(t)*s3(t))", false, ""},
    {"ansatz_general", "TT_12", "eq:TT23", Cmp::TT, 1, 2, -1, "-2*s1(t)*s2(t)*n4'(t)*n5'(t)/(s0(t)*s1(t)*s2(t)*s3(t))", false, ""},
    {"ansatz_general", "TT_13", "eq:TT24", Cmp::TT, 1, 3, -1, "2*s1(t)*s3(t)*n3'(t)*n5'(t)/(s0(t)*s1(t)*s2(t)*s3(t))", false, ""},
    {"ansatz_general", "TT_21", "eq:TT32", Cmp::TT, 2, 1, -1, "-2*s1(t)*s2(t)*n4'(t)*n5'(t)/(s0(t)*s1(t)*s2(t)*s3(t))", false, ""},
    {"ansatz_general", "TT_22", "eq:TT33", Cmp::TT, 2, 2, -1, "-2*s2(t)*(s3(t)*n3'(t)^2 + s1(t)*n5'(t)^2)/(s0(t)*s1(t)*s2(t)*s3(t))", false, ""},
    {"ansatz_general", "TT_23", "eq:TT34", Cmp::TT, 2, 3, -1, "-2*s2(t)*s3(t)*n3'(t)*n4'(t)/(s0(t)*s1(t)*s2(t)*s3(t))", false, ""},
    {"ansatz_general", "TT_31", "eq:TT42", Cmp::TT, 3, 1, -1, "2*s1(t)*s3(t)*n3'(t)*n5'(t)/(s0(t)*s1(t)*s2(t)*s3(t))", false, ""},
    {"ansatz_general", "TT_32", "eq:TT43", Cmp::TT, 3, 2, -1, "-2*s2(t)*s3(t)*n3'(t)*n4'(t)/(s0(t)*s1(t)*s2(t)*s3(t))", false, ""},
    {"ansatz_general", "TT_33", "eq:TT44", Cmp::TT, 3, 3, -1, "-2*s3(t)*(s2(t)*n4'(t)^2 + s1(t)*n5'(t)^2)/(s0(t)*s1(t)*s2(t)*s3(t))", false, ""},
    {"ansatz_general", "TT_0i and TT_i0", "eq:TT44 (vanishing entries)", Cmp::TTZeros, -1, -1, -1, "0", false, ""},
    {"ansatz_general", "g^{ab} TT_ab", "eq:gTT", Cmp::GTT, -1, -1, -1, "-6*(s3(t)*n3'(t)^2 + s2(t)*n4'(t)^2 + s1(t)*n5'(t)^2)/(s0(t)*s1(t)*s2(t)*s3(t))", false, ""},

    // ---- general ansatz: curvature identities ----
    {"ansatz_general", "kind-0 scalar minus torsion-free scalar", "eq:metriclagrangianwithtorsion", Cmp::ScalarTorsionGap, -1, -1, -1, "-3*(s3(t)*n3'(t)^2 + s2(t)*n4'(t)^2 + s1(t)*n5'(t)^2)/(2*s0(t)*s1(t)*s2(t)*s3(t))", false, ""},
    {"ansatz_general", "kind-5 Ricci minus torsion-free Ricci", "eq:RiccilinindependentGRN", Cmp::RicciK5Gap, -1, -1, -1, "0", true,
     "the printed kind-5 row reduces to the torsion-free Ricci, but contracting the family with the kind-5 coefficients leaves -TT_ab/4"},
    {"ansatz_general", "kind-5 scalar minus torsion-free scalar", "eq:ScalarlinindependentGRN", Cmp::ScalarK5Gap, -1, -1, -1, "0", true,
     "the printed kind-5 scalar reduces to the torsion-free scalar, but the same contraction leaves -g^{ab}TT_ab/4"},

    // ---- isotropic case, three equal anti-symmetric entries ----
    {"friedmann_n3", "T_00", "eq:densitysn3", Cmp::Stress, 0, 0, -1, "9.5*n'(t)^2/s(t)^2", true,
     "general formula gives 7/2; the closed-form comoving density gives 25/2; the printed 9.5 agrees with neither"},
    {"friedmann_n3", "T_11", "eq:T11sn3", Cmp::Stress, 1, 1, -1, "4*n'(t)^2/s(t)", true, "general formula gives -5/6"},
    {"friedmann_n3", "T_12", "eq:T11sn3", Cmp::Stress, 1, 2, -1, "3*n'(t)^2/s(t)", true, "general formula gives -8/3"},
    {"friedmann_n3", "T_13", "eq:T11sn3", Cmp::Stress, 1, 3, -1, "-2*n'(t)^2/s(t)", true, "general formula gives 8/3"},
    {"friedmann_n3", "T_22", "eq:T22sn3", Cmp::Stress, 2, 2, -1, "4*n'(t)^2/s(t)", true, "general formula gives -5/6"},
    {"friedmann_n3", "T_23", "eq:T22sn3", Cmp::Stress, 2, 3, -1, "2*n'(t)^2/s(t)", true, "general formula gives -8/3"},
    {"friedmann_n3", "T_33", "eq:T33sn3", Cmp::Stress, 3, 3, -1, "4*n'(t)^2/s(t)", true, "general formula gives -5/6"},
    {"friedmann_n3", "T_01", "eq:T33sn3 (vanishing entries)", Cmp::Stress, 0, 1, -1, "0", false, ""},
    {"friedmann_n3", "T_02", "eq:T33sn3 (vanishing entries)", Cmp::Stress, 0, 2, -1, "0", false, ""},
    {"friedmann_n3", "T_03", "eq:T33sn3 (vanishing entries)", Cmp::Stress, 0, 3, -1, "0", false, ""},
    {"friedmann_n3", "comoving p", "eq:pressurecgeneralfinalcor", Cmp::CorP, -1, -1, -1, "39/18*n'(t)^2*s(t)^2", true,
     "coefficient 39/18 = 13/6 matches the closed form; the power of s(t) is printed as +2 where the closed form carries -2"},
    {"friedmann_n3", "comoving rho", "eq:rhocgeneralfinalcor", Cmp::CorRho, -1, -1, -1, "25/2*n'(t)^2*s(t)^2", true,
     "coefficient 25/2 matches the closed form; the power of s(t) is printed as +2 where the closed form carries -2"},
    {"friedmann_n3", "comoving omega", "eq:omegacgeneralfinalcor", Cmp::CorOmega, -1, -1, -1, "13/75", false, ""},

    // ---- isotropic case, two equal anti-symmetric entries ----
    {"friedmann_n2", "T_00", "eq:densitysn2", Cmp::Stress, 0, 0, -1, "17/3*n'(t)^2/s(t)^2", true,
     "general formula gives 7/3; the closed-form comoving density gives 25/3; the printed 17/3 agrees with neither"},
    {"friedmann_n2", "T_11", "eq:T11sn2", Cmp::Stress, 1, 1, -1, "1/3*n'(t)^2/s(t)", true, "general formula gives -7/3"},
    {"friedmann_n2", "T_22", "eq:T22sn2", Cmp::Stress, 2, 2, -1, "1/3*n'(t)^2/s(t)", false, ""},
    {"friedmann_n2", "T_23", "eq:T22sn2", Cmp::Stress, 2, 3, -1, "2*n'(t)^2/s(t)", true, "general formula gives -8/3"},
    {"friedmann_n2", "T_33", "eq:T33sn2", Cmp::Stress, 3, 3, -1, "-23/12*n'(t)^2/s(t)", true, "general formula gives 1/3"},
    {"friedmann_n2", "T_01", "eq:T33sn2 (vanishing entries)", Cmp::Stress, 0, 1, -1, "0", false, ""},
    {"friedmann_n2", "T_02", "eq:T33sn2 (vanishing entries)", Cmp::Stress, 0, 2, -1, "0", false, ""},
    {"friedmann_n2", "T_03", "eq:T33sn2 (vanishing entries)", Cmp::Stress, 0, 3, -1, "0", false, ""},
    {"friedmann_n2", "T_12", "eq:T33sn2 (vanishing entries)", Cmp::Stress, 1, 2, -1, "0", false, ""},
    {"friedmann_n2", "T_13", "eq:T33sn2 (vanishing entries)", Cmp::Stress, 1, 3, -1, "0", false, ""},
    {"friedmann_n2", "comoving p", "eq:pressurecgeneralfinalcor", Cmp::CorP, -1, -1, -1, "13/9*n'(t)^2/s(t)^2", false, ""},
    {"friedmann_n2", "comoving rho", "eq:rhocgeneralfinalcor", Cmp::CorRho, -1, -1, -1, "25/3*n'(t)^2/s(t)^2", false, ""},
    {"friedmann_n2", "comoving omega", "eq:omegacgeneralfinalcor", Cmp::CorOmega, -1, -1, -1, "13/75", false, ""},

    // ---- three scale factors, one anti-symmetric entry ----
    {"bianchi_I", "T_00", "eq:frho", Cmp::Stress, 0, 0, -1, "25/6*c'(t)^2/(s1(t)*s2(t))", true,
     "the printed value coincides with the closed-form comoving density; the general formula gives 7/6"},
    {"bianchi_I", "T_11", "eq:hT11", Cmp::Stress, 1, 1, -1, "-7/6*c'(t)^2/s2(t)", false, ""},
    {"bianchi_I", "T_22", "eq:hT22", Cmp::Stress, 2, 2, -1, "-7/6*c'(t)^2/s1(t)", false, ""},
    {"bianchi_I", "T_33", "eq:hT33", Cmp::Stress, 3, 3, -1, "3/2*s3(t)*c'(t)^2/(s1(t)*s2(t))", false, ""},
    {"bianchi_I", "T_01", "eq:hT33 (vanishing entries)", Cmp::Stress, 0, 1, -1, "0", false, ""},
    {"bianchi_I", "T_02", "eq:hT33 (vanishing entries)", Cmp::Stress, 0, 2, -1, "0", false, ""},
    {"bianchi_I", "T_03", "eq:hT33 (vanishing entries)", Cmp::Stress, 0, 3, -1, "0", false, ""},
    {"bianchi_I", "T_12", "eq:hT33 (vanishing entries)", Cmp::Stress, 1, 2, -1, "0", false, ""},
    {"bianchi_I", "T_13", "eq:hT33 (vanishing entries)", Cmp::Stress, 1, 3, -1, "0", false, ""},
    {"bianchi_I", "T_23", "eq:hT33 (vanishing entries)", Cmp::Stress, 2, 3, -1, "0", false, ""},
    {"bianchi_I", "comoving p", "eq:pressurecgeneralfinalcor", Cmp::CorP, -1, -1, -1, "13/18*c'(t)^2/(s1(t)*s2(t))", false, ""},
    {"bianchi_I", "comoving rho", "eq:rhocgeneralfinalcor", Cmp::CorRho, -1, -1, -1, "25/6*c'(t)^2/(s1(t)*s2(t))", false, ""},
    {"bianchi_I", "comoving omega", "eq:omegacgeneralfinalcor", Cmp::CorOmega, -1, -1, -1, "13/75", false, ""},

    // ---- isotropic limit of the previous case ----
    {"flrw", "T_00", "sec4.2.1 (stress table)", Cmp::Stress, 0, 0, -1, "25/6*c'(t)^2/s(t)^2", true,
     "the printed value coincides with the closed-form comoving density; the general formula gives 7/6"},
    {"flrw", "T_11", "sec4.2.1 (stress table)", Cmp::Stress, 1, 1, -1, "-7/6*c'(t)^2/s(t)", false, ""},
    {"flrw", "T_22", "sec4.2.1 (stress table)", Cmp::Stress, 2, 2, -1, "-7/6*c'(t)^2/s(t)", false, ""},
    {"flrw", "T_33", "sec4.2.1 (stress table)", Cmp::Stress, 3, 3, -1, "3/2*c'(t)^2/s(t)", false, ""},
    {"flrw", "comoving p", "sec4.2.1 (comoving values)", Cmp::CorP, -1, -1, -1, "13/18*c'(t)^2/s(t)^2", false, ""},
    {"flrw", "comoving rho", "sec4.2.1 (comoving values)", Cmp::CorRho, -1, -1, -1, "25/6*c'(t)^2/s(t)^2", false, ""},
    {"flrw", "comoving omega", "sec4.2.1 (comoving values)", Cmp::CorOmega, -1, -1, -1, "13/75", false, ""},
};
// clang-format on

// The 18 non-zero anti-symmetric connection components: all permutations
// of three distinct indices containing the time index.
bool in_printed_alt_table(int i, int j, int k) {
    if (i == j || j == k || i == k) return false;
    return i == 0 || j == 0 || k == 0;
}

const char* cmp_name(Cmp c) {
    switch (c) {
        case Cmp::AltFirst: return "antisym_first_kind";
        case Cmp::AltFirstZeros: return "antisym_first_kind_zeros";
        case Cmp::AltRaised: return "antisym_raised";
        case Cmp::AltRaisedZeros: return "antisym_raised_zeros";
        case Cmp::GammaGamma: return "connection_product";
        case Cmp::GammaGammaZeros: return "connection_product_zeros";
        case Cmp::TT: return "torsion_product";
        case Cmp::TTZeros: return "torsion_product_zeros";
        case Cmp::GTT: return "torsion_invariant";
        case Cmp::ScalarTorsionGap: return "scalar_torsion_gap";
        case Cmp::RicciK5Gap: return "ricci_kind5_gap";
        case Cmp::ScalarK5Gap: return "scalar_kind5_gap";
        case Cmp::Stress: return "stress_energy";
        case Cmp::CorP: return "closed_form_pressure";
        case Cmp::CorRho: return "closed_form_density";
        case Cmp::CorOmega: return "closed_form_omega";
    }
    return "?";
}

// Lazily derived per-case quantities; each comparator touches only what it
// needs, so e.g. the connection tables never trigger a fluid derivation.
struct CaseCtx {
    MetricBundle b;
    std::optional<Connection> conn;
    std::optional<Tensor> alt_first;
    std::optional<Tensor> sq;
    std::optional<Tensor> stress;
    std::optional<FluidState> closed;
    std::optional<FluidState> pipe;
    std::optional<Tensor> ricci5_gap;

    explicit CaseCtx(const std::string& id) : b(preset_bundle(id)) {}

    const Connection& C() {
        if (!conn) conn = christoffel(b);
        return *conn;
    }
    const Tensor& AltFirst() {
        if (!alt_first) alt_first = antisymmetrize(C().gamma_first, 1, 2);
        return *alt_first;
    }
    const Tensor& Sq() {
        if (!sq) sq = torsion_square(C());
        return *sq;
    }
    const Tensor& Stress() {
        if (!stress) stress = stress_energy(b, C());
        return *stress;
    }
    const FluidState& Closed() {
        if (!closed) closed = comoving_closed_forms(b);
        return *closed;
    }
    const FluidState& Pipe() {
        if (!pipe) pipe = fluid_decompose(b, Stress(), comoving_velocity(b));
        return *pipe;
    }
    const Tensor& Ricci5Gap() {
        if (!ricci5_gap) ricci5_gap = sub(ricci(b, C(), 5), ricci_lc(b, C()));
        return *ricci5_gap;
    }
};

struct Derived {
    // (component name, engine value); a single value for scalar entries
    std::vector<std::pair<std::string, Expr>> parts;
    std::vector<std::string> candidates;
};

std::string idx2(int i, int j) {
    return std::to_string(i) + std::to_string(j);
}

Derived compute(const Entry& e, CaseCtx& ctx) {
    Derived d;
    const int n = ctx.b.dim;
    switch (e.cmp) {
        case Cmp::AltFirst:
            d.parts.emplace_back(e.quantity, ctx.AltFirst().at({e.i, e.j, e.k}));
            break;
        case Cmp::AltFirstZeros:
        case Cmp::AltRaisedZeros: {
            const Tensor& t =
                e.cmp == Cmp::AltFirstZeros ? ctx.AltFirst() : ctx.C().gamma_alt;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k)
                        if (!in_printed_alt_table(i, j, k))
                            d.parts.emplace_back("component " + std::to_string(i) +
                                                     std::to_string(j) + std::to_string(k),
                                                 t.at({i, j, k}));
            break;
        }
        case Cmp::AltRaised:
            d.parts.emplace_back(e.quantity, ctx.C().gamma_alt.at({e.i, e.j, e.k}));
            break;
        case Cmp::GammaGamma:
            // G^c_{v a d} G^d_{v b c} = TT_ab / 4 since the torsion is twice
            // the anti-symmetric connection
            d.parts.emplace_back(e.quantity,
                                 simplify(scale(ctx.Sq(), Rational(1, 4)).at({e.i, e.j})));
            break;
        case Cmp::GammaGammaZeros:
            for (int j = 1; j < n; ++j)
                d.parts.emplace_back("component 0" + std::to_string(j),
                                     simplify(scale(ctx.Sq(), Rational(1, 4)).at({0, j})));
            break;
        case Cmp::TT:
            d.parts.emplace_back(e.quantity, ctx.Sq().at({e.i, e.j}));
            break;
        case Cmp::TTZeros:
            for (int j = 1; j < n; ++j) {
                d.parts.emplace_back("component 0" + std::to_string(j), ctx.Sq().at({0, j}));
                d.parts.emplace_back("component " + std::to_string(j) + "0",
                                     ctx.Sq().at({j, 0}));
            }
            break;
        case Cmp::GTT:
            d.parts.emplace_back(e.quantity, torsion_invariant(ctx.b, ctx.C()));
            break;
        case Cmp::ScalarTorsionGap:
            d.parts.emplace_back(
                e.quantity,
                simplify(scalar_curvature(ctx.b, ctx.C(), 0) - scalar_lc(ctx.b, ctx.C())));
            break;
        case Cmp::RicciK5Gap:
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    d.parts.emplace_back("component " + idx2(i, j),
                                         ctx.Ricci5Gap().at({i, j}));
            break;
        case Cmp::ScalarK5Gap:
            d.parts.emplace_back(
                e.quantity,
                simplify(scalar_curvature(ctx.b, ctx.C(), 5) - scalar_lc(ctx.b, ctx.C())));
            break;
        case Cmp::Stress:
            d.parts.emplace_back(e.quantity, ctx.Stress().at({e.i, e.j}));
            if (e.i == 0 && e.j == 0)
                d.candidates.push_back("closed_form_density=" +
                                       print(simplify(ctx.Closed().rho)));
            break;
        case Cmp::CorP:
            d.parts.emplace_back(e.quantity, ctx.Closed().p);
            d.candidates.push_back("stress_decomposition=" + print(simplify(ctx.Pipe().p)));
            break;
        case Cmp::CorRho:
            d.parts.emplace_back(e.quantity, ctx.Closed().rho);
            d.candidates.push_back("stress_decomposition=" +
                                   print(simplify(ctx.Pipe().rho)));
            break;
        case Cmp::CorOmega: {
            const FluidState& f = ctx.Closed();
            d.parts.emplace_back(e.quantity, f.omega ? *f.omega : zero());
            if (ctx.Pipe().omega)
                d.candidates.push_back("stress_decomposition=" +
                                       print(simplify(*ctx.Pipe().omega)));
            break;
        }
    }
    return d;
}

}  // namespace

const char* verdict_name(AuditVerdict v) {
    switch (v) {
        case AuditVerdict::Match: return "match";
        case AuditVerdict::Mismatch: return "mismatch";
        case AuditVerdict::PaperInternalConflict: return "paper_internal_conflict";
    }
    return "?";
}

const std::vector<std::string>& audit_case_ids() {
    static const std::vector<std::string> ids = {"ansatz_general", "friedmann_n3",
                                                 "friedmann_n2", "bianchi_I", "flrw"};
    return ids;
}

std::vector<CaseReport> reproduce(const std::string& case_id) {
    std::vector<std::string> order;
    if (case_id.empty() || case_id == "all") {
        order = audit_case_ids();
    } else {
        bool known = false;
        for (const std::string& id : audit_case_ids()) known = known || id == case_id;
        if (!known) throw GeometryError("unknown audit case '" + case_id + "'");
        order.push_back(case_id);
    }

    std::vector<CaseReport> reports;
    for (const std::string& id : order) {
        CaseCtx ctx(id);
        for (const Entry& e : kManifest) {
            if (id != e.case_id) continue;
            CaseReport r;
            r.case_id = e.case_id;
            r.quantity = e.quantity;
            r.eq_label = e.label;
            r.paper_value = e.printed;
            r.note = e.note;
            r.candidates = {std::string("printed=") + e.printed};

            Expr printed = parse(e.printed);
            Derived dv = compute(e, ctx);
            bool all_equal = true;
            double worst = 0.0;
            const Expr* worst_expr = &dv.parts.front().second;
            for (const auto& part : dv.parts) {
                EquivResult eq = equivalent(printed, part.second, 16, 1e-9);
                const bool ok = eq.verdict == Verdict::Equal;
                all_equal = all_equal && ok;
                if (!ok && eq.max_dev >= worst) {
                    worst = eq.max_dev;
                    worst_expr = &part.second;
                }
            }
            r.derived_value = print(simplify(*worst_expr));
            r.max_rel_dev = all_equal ? 0.0 : worst;
            r.candidates.push_back("engine=" + r.derived_value);
            for (const std::string& c : dv.candidates) r.candidates.push_back(c);

            if (all_equal) {
                r.verdict = AuditVerdict::Match;
                if (e.conflict)
                    r.note = "recorded as an internal conflict but the values agree";
            } else {
                r.verdict = e.conflict ? AuditVerdict::PaperInternalConflict
                                       : AuditVerdict::Mismatch;
            }
            reports.push_back(std::move(r));
        }
    }
    return reports;
}

std::string audit_manifest_json() {
    nlohmann::json doc;
    doc["version"] = kManifestVersion;
    nlohmann::json entries = nlohmann::json::array();
    for (const Entry& e : kManifest) {
        nlohmann::json je;
        je["case"] = e.case_id;
        je["quantity"] = e.quantity;
        je["label"] = e.label;
        je["comparator"] = cmp_name(e.cmp);
        if (e.i >= 0) {
            nlohmann::json idx = nlohmann::json::array();
            idx.push_back(e.i);
            idx.push_back(e.j);
            if (e.k >= 0) idx.push_back(e.k);
            je["index"] = idx;
        }
        je["printed"] = e.printed;
        je["expect"] = e.conflict ? "conflict" : "match";
        if (e.note[0] != '\0') je["note"] = e.note;
        entries.push_back(je);
    }
    doc["entries"] = entries;
    return doc.dump(2) + "\n";
}

}  // namespace gtorsion
