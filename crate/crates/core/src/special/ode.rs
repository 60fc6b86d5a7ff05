//! Dormand–Prince 8(5,3) with step-size control, specialised to dense
//! output at a prescribed sorted list of abscissae.
//!
//! The integrator works on a flat state vector so that one call can carry a
//! whole band of independent equations sharing the same coefficient
//! functions; the caller supplies the error norm.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::{Error, Result};

const STAGES: usize = 12;

const C: [f64; STAGES] = [
    0.0,
    5.260_015_195_876_773E-2,
    7.890_022_793_815_16E-2,
    1.183_503_419_072_274E-1,
    2.816_496_580_927_726E-1,
    3.333_333_333_333_333E-1,
    0.25,
    3.076_923_076_923_077E-1,
    6.512_820_512_820_513E-1,
    0.6,
    8.571_428_571_428_571E-1,
    1.0,
];

#[rustfmt::skip]
const A: [[f64; STAGES]; STAGES] = [
    [0.0; STAGES],
    [5.260_015_195_876_773E-2, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.972_505_698_453_79E-2, 5.917_517_095_361_37E-2, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [2.958_758_547_680_685E-2, 0.0, 8.876_275_643_042_054E-2, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [2.413_651_341_592_667E-1, 0.0, -8.845_494_793_282_861E-1, 9.248_340_032_617_92E-1, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.703_703_703_703_703_5E-2, 0.0, 0.0, 1.708_286_087_294_738_6E-1, 1.254_676_875_668_224_2E-1, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.7109375E-2, 0.0, 0.0, 1.702_522_110_195_440_5E-1, 6.021_653_898_045_596E-2, -1.7578125E-2, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.709_200_011_850_479E-2, 0.0, 0.0, 1.703_839_257_122_399_8E-1, 1.072_620_304_463_732_8E-1, -1.531_943_774_862_440_2E-2, 8.273_789_163_814_023E-3, 0.0, 0.0, 0.0, 0.0, 0.0],
    [6.241_109_587_160_757E-1, 0.0, 0.0, -3.360_892_629_446_941_4, -8.682_193_468_417_26E-1, 2.759_209_969_944_671E1, 2.015_406_755_047_789_4E1, -4.348_988_418_106_996E1, 0.0, 0.0, 0.0, 0.0],
    [4.776_625_364_382_643_4E-1, 0.0, 0.0, -2.488_114_619_971_667_7, -5.902_908_268_368_43E-1, 2.123_005_144_818_119_3E1, 1.527_923_363_288_242_3E1, -3.328_821_096_898_486E1, -2.033_120_170_850_862_7E-2, 0.0, 0.0, 0.0],
    [-9.371_424_300_859_873E-1, 0.0, 0.0, 5.186_372_428_844_064, 1.091_437_348_996_729_5, -8.149_787_010_746_927, -1.852_006_565_999_696E1, 2.273_948_709_935_050_5E1, 2.493_605_552_679_652_3, -3.046_764_471_898_219_6, 0.0, 0.0],
    [2.273_310_147_516_538, 0.0, 0.0, -1.053_449_546_673_725E1, -2.000_872_058_224_862_5, -1.795_893_186_311_88E1, 2.794_888_452_941_996E1, -2.858_998_277_135_023_5, -8.872_856_933_530_63, 1.236_056_717_579_430_3E1, 6.433_927_460_157_636E-1, 0.0],
];

const B: [f64; STAGES] = [
    5.429_373_411_656_876_5E-2,
    0.0,
    0.0,
    0.0,
    0.0,
    4.450_312_892_752_409,
    1.891_517_899_314_500_3,
    -5.801_203_960_010_585,
    3.111_643_669_578_199E-1,
    -1.521_609_496_625_161E-1,
    2.013_654_008_040_303_4E-1,
    4.471_061_572_777_259E-2,
];

const ER: [f64; STAGES] = [
    1.312_004_499_419_488E-2,
    0.0,
    0.0,
    0.0,
    0.0,
    -1.225_156_446_376_204_4,
    -4.957_589_496_572_502E-1,
    1.664_377_182_454_986_4,
    -3.503_288_487_499_736_6E-1,
    3.341_791_187_130_175E-1,
    8.192_320_648_511_571E-2,
    -2.235_530_786_388_629_4E-2,
];

// third-order embedded weights on stages 1, 9, 12
const BHH: [f64; 3] = [
    2.440_944_881_889_764E-1,
    7.338_466_882_816_118E-1,
    2.205_882_352_941_176_6E-2,
];

pub(crate) struct Settings {
    pub initial_step: f64,
    pub max_step: f64,
    pub max_steps: usize,
}

/// Integrates `y' = rhs(r, y)` from `(r0, y0)` and records the state at each
/// abscissa in `outputs` (sorted ascending, all `≥ r0`).
///
/// `norm(y_old, y_new, e)` must return the scaled size of an error vector,
/// with `≤ 1` meaning acceptable. It is called for both the fifth- and the
/// third-order estimators and combined as in Hairer's DOP853.
pub(crate) fn integrate<F, N>(
    mut rhs: F,
    norm: N,
    r0: f64,
    y0: &[f64],
    outputs: &[f64],
    settings: &Settings,
) -> Result<Vec<Vec<f64>>>
where
    F: FnMut(f64, &[f64], &mut [f64]),
    N: Fn(&[f64], &[f64], &[f64]) -> f64,
{
    let n = y0.len();
    let mut y = y0.to_vec();
    let mut r = r0;
    let mut k = vec![vec![0.0; n]; STAGES];
    let mut stage = vec![0.0; n];
    let mut y_new = vec![0.0; n];
    let mut e5 = vec![0.0; n];
    let mut e3 = vec![0.0; n];
    let mut result = Vec::with_capacity(outputs.len());

    let mut h = settings.initial_step.min(settings.max_step);
    let mut steps = 0usize;
    rhs(r, &y, &mut k[0]);

    for &target in outputs {
        debug_assert!(target >= r0);
        while target - r > 1e-14 * (1.0 + target.abs()) {
            steps += 1;
            if steps > settings.max_steps || h < 1e-14 * (1.0 + r.abs()) {
                return Err(Error::StepSizeUnderflow { at: r });
            }
            let remaining = target - r;
            let clamped = h >= remaining;
            let step = if clamped { remaining } else { h };

            for s in 1..STAGES {
                for i in 0..n {
                    let mut acc = 0.0;
                    for j in 0..s {
                        let a = A[s][j];
                        if a != 0.0 {
                            acc += a * k[j][i];
                        }
                    }
                    stage[i] = y[i] + step * acc;
                }
                rhs(r + C[s] * step, &stage, &mut k[s]);
            }
            for i in 0..n {
                let mut inc = 0.0;
                let mut err5 = 0.0;
                for s in 0..STAGES {
                    inc += B[s] * k[s][i];
                    err5 += ER[s] * k[s][i];
                }
                y_new[i] = y[i] + step * inc;
                e5[i] = err5;
                e3[i] = inc - BHH[0] * k[0][i] - BHH[1] * k[8][i] - BHH[2] * k[11][i];
            }
            let n5 = norm(&y, &y_new, &e5);
            let n3 = norm(&y, &y_new, &e3);
            let deno = n5 * n5 + 0.01 * n3 * n3;
            let err = if deno > 0.0 { step * n5 * n5 / deno.sqrt() } else { 0.0 };

            let fac = (err.powf(0.125) / 0.9).clamp(1.0 / 6.0, 3.0);
            if err <= 1.0 {
                r = if clamped { target } else { r + step };
                core::mem::swap(&mut y, &mut y_new);
                rhs(r, &y, &mut k[0]);
                // a clamped step says nothing about how large the next may be
                h = if clamped { h.max(step / fac) } else { step / fac };
                h = h.min(settings.max_step);
            } else {
                h = step / fac;
            }
        }
        result.push(y.clone());
    }
    Ok(result)
}
