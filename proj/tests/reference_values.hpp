#pragma once

// Reference values generated by tests/oracles/reference_values.py (mpmath at
// 40 digits, quadrature or brute-force series; no library code involved).
// Regenerate with that script rather than editing by hand.

namespace ref {

inline constexpr double bessel_k_1p87_2 = 0.23008903452508898571;
inline constexpr double bessel_k_0p3_1em5 = 58.178619126715330924;
inline constexpr double bessel_k_12p25_0p75 = 6014463590854.1556382;
inline constexpr double bessel_k_0p5_650_scaled = 0.049159024944872637124;
inline constexpr double bessel_k_40p3_15 = 40974943014.856143236;
inline constexpr double struve_l_1_1 = 0.22676438105580863683;
inline constexpr double struve_l_m0p7_4 = 10.543830897774561118;
inline constexpr double lommel_2p5_0p5_3 = 2.1041339950717092781;
inline constexpr double hyp2f1_1_2p37_0p5_0p25 = 3.3118679553032426883;
inline constexpr double hyp2f1_3p5_4p37_0p5_0p81 = 11342678.884700441503;
inline constexpr double kummer_2_5p5_m1p3 = 0.64168362039823059987;
inline constexpr double kummer_1p5_3p25_40 = 1040547427449527.5351;
inline constexpr double tricomi_2_4p7_1p1 = 5.3824358956969120180;
inline constexpr double tricomi_4_6p2_9 = 0.00023761026252387232210;
inline constexpr double big_g_2p37_0p87_5 = 0.89667506377603900884;
inline constexpr double big_g_m0p3_m0p3_2 = 0.97796807962741169579;
inline constexpr double big_g_40_2_35 = 0.19884354989128116271;
inline constexpr double gamma_2p37 = 1.2183595051778694144;
inline constexpr double exp_weighted_2p5_1p7 = 5.3884527820983999799;
inline constexpr double vg_pdf_1_2_0p5_0p3_at_1 = 0.36834188199014541576;
inline constexpr double abs_mu_zero_nu0p3_r2p5 = 10.467464900145736749;
inline constexpr double abs_even_vg_1_2_0p5_0p3_r4 = 9.3312999999999998693;
inline constexpr double abs_odd_vg_1_2_1_0p5_r3 = 13.799415116218634924;
inline constexpr double abs_sym_vg_1_2_0_0p7_r3 = 2.2789077007707268831;
inline constexpr double abs_half_vg_2p5_3_1_0p4_r1p5 = 1.5941831093880523992;
inline constexpr double abs_al_2_1_m0p7_r2p5 = 1.6200218932815838849;
inline constexpr double abs_quad_vg_0p7_2_0p3_0p5_r2p4 = 1.3825298783777699206;
inline constexpr double abs_sp500_raw_r1 = 0.0060825699175912145152;
inline constexpr double abs_sp500_raw_r3 = 9.5023729281898900908e-7;
inline constexpr double abs_sp500_central_r1 = 0.0060814715213828595117;
inline constexpr double abs_sp500_central_r3 = 9.5015159968293036399e-7;

}  // namespace ref
