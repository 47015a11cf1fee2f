// Lanczos approximation parameters g = 607/128, n = 15.
//
// Coefficients from P. Godfrey, "A note on the computation of the
// convergent Lanczos complex Gamma approximation" (2001); the same table
// is used by Apache Commons Math. Relative error of the resulting Γ is
// below 1e-14 on Re s ≥ 1/2 when evaluated in binary64 (checked against a
// 40-digit reference over Re s ∈ [0.5, 20], |Im s| ≤ 100).

pub(super) const LANCZOS_G: f64 = 607.0 / 128.0;

pub(super) const LANCZOS_COEFFS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    4.652_362_892_704_858e-5,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];
