use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use num_complex::Complex64;
use qaskey_core::polys::{eval_poly, eval_via_limit_chain};
use qaskey_core::{creal, Family, FamilyKind, ParamMultiset, QContext, Rep, ZPoint};

fn main() {
    // replicate check_limit_chain at seed 1 exactly
    let group_seed = 1u64.wrapping_add(13u64.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut rng = ChaCha8Rng::seed_from_u64(group_seed);
    let ctx = QContext::real(0.5).unwrap();
    for kind in [
        FamilyKind::DualHahn,
        FamilyKind::AlSalamChihara,
        FamilyKind::BigHermite,
        FamilyKind::Hermite,
    ] {
        let mut best: Option<(f64, Family, ZPoint, f64, Vec<Complex64>)> = None;
        for _ in 0..64 {
            let p: Vec<f64> = (0..4).map(|_| rng.gen_range(0.15..0.5)).collect();
            let fam =
                Family::new(kind, ParamMultiset::from_reals(&p[..kind.arity()]).unwrap()).unwrap();
            let z = rng.gen_range(0.8..1.8);
            let pt = ZPoint::new(creal(z)).unwrap();
            let directs: Vec<Complex64> = (0..=4u32)
                .map(|n| eval_poly(&fam, n, pt, &ctx, Rep::Canonical).unwrap())
                .collect();
            let max = directs.iter().map(|v| v.norm()).fold(0.0, f64::max);
            let min = directs.iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min);
            let score = min / max;
            if best.as_ref().is_none_or(|b| score > b.0) {
                best = Some((score, fam, pt, z, directs));
            }
            if score >= 0.3 {
                break;
            }
        }
        let (score, fam, pt, z, directs) = best.unwrap();
        let scale = directs.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let mut per_n_worst = 0.0f64;
        let mut uni_worst = 0.0f64;
        for n in 0..=4u32 {
            let direct = directs[n as usize];
            let lifted = eval_via_limit_chain(&fam, n, pt, &ctx, 1e-6).unwrap();
            per_n_worst = per_n_worst.max((lifted - direct).norm() / direct.norm());
            uni_worst = uni_worst.max((lifted - direct).norm() / scale);
        }
        println!(
            "{kind}: score {score:.3} z {z:.3} per-n {per_n_worst:.4e} uniform {uni_worst:.4e} vals {:?}",
            directs.iter().map(|v| v.norm()).collect::<Vec<_>>()
        );
    }
}
