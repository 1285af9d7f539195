//! Exhaustive small-field invariants. Where the unit tests freeze single
//! hand-derived values, these sweeps check structural identities over every
//! element, polynomial, or subspace of fields small enough to enumerate,
//! always against an oracle that does not share the code path under test.

mod common;

use common::{all_subspaces, brute_log, fq, naive_cell_count, pool_pairs, prime_powers, rng};
use cosetcount::apps::{self, AffineSpace, DigitBasis};
use cosetcount::arith;
use cosetcount::charsum::{self, CharCtx, MultChar};
use cosetcount::counting;
use cosetcount::field::FieldCtx;
use cosetcount::indep::{self, IndepVerdict, TupleSpec};
use cosetcount::poly::{self, FqPoly};
use rand::Rng;

#[test]
fn log_tables_match_generator_scan() {
    for (p, n) in prime_powers(64) {
        let ctx = FieldCtx::new(p, n).unwrap();
        for r in 0..ctx.q() as usize {
            let v = ctx.elem_of(r);
            assert_eq!(ctx.log_rank(r), brute_log(&ctx, &v), "q = {}, r = {r}", ctx.q());
        }
    }
}

#[test]
fn rank_ops_match_element_ops() {
    for (p, n) in prime_powers(32) {
        let ctx = FieldCtx::new(p, n).unwrap();
        let q = ctx.q() as usize;
        let m = ctx.q() - 1;
        for a in 0..q {
            for b in 0..q {
                let (ea, eb) = (ctx.elem_of(a), ctx.elem_of(b));
                assert_eq!(ctx.add_rank(a, b), ctx.rank_of(&ctx.add(&ea, &eb)));
                assert_eq!(ctx.mul_rank(a, b), ctx.rank_of(&ctx.mul(&ea, &eb)));
                // The log is a homomorphism onto Z/(q-1).
                if let (Some(la), Some(lb)) = (ctx.log_rank(a), ctx.log_rank(b)) {
                    let lab = ctx.log_rank(ctx.mul_rank(a, b)).unwrap();
                    assert_eq!(lab, (la + lb) % m.max(1));
                }
            }
        }
    }
}

#[test]
fn power_residue_criterion_exhaustive() {
    // u is a d-th power of a nonzero element iff gcd(d, q-1) divides log u.
    for (p, n) in [(7u64, 1u32), (3, 2), (2, 4), (13, 1)] {
        let ctx = FieldCtx::new(p, n).unwrap();
        let q = ctx.q() as usize;
        for d in 1..=ctx.q() - 1 {
            let g = arith::gcd(d, ctx.q() - 1);
            for u in 1..q {
                let is_power = (1..q).any(|w| ctx.pow_rank(w, d) == u);
                let log_test = ctx.log_rank(u).unwrap() % g == 0;
                assert_eq!(is_power, log_test, "q = {}, d = {d}, u = {u}", ctx.q());
            }
        }
    }
}

#[test]
fn direct_counts_match_naive_oracle() {
    for (p, n) in [(5u64, 1u32), (7, 1), (2, 3), (3, 2), (13, 1), (2, 4)] {
        let ctx = FieldCtx::new(p, n).unwrap();
        let divs = arith::divisors(ctx.q() - 1);
        for (a, b) in pool_pairs(&ctx).into_iter().take(6) {
            for &d1 in divs.iter().filter(|&&d| d <= 4) {
                for &d2 in divs.iter().filter(|&&d| d <= 4) {
                    let polys = vec![a.clone(), b.clone()];
                    let spec = TupleSpec::new(&ctx, polys.clone(), vec![d1, d2]).unwrap();
                    let dist = counting::full_distribution(&ctx, &spec).unwrap();
                    for idx in 0..spec.cell_count() {
                        let res = spec.cell_residues(idx);
                        assert_eq!(
                            dist.counts[idx as usize],
                            naive_cell_count(&ctx, &polys, &[d1, d2], &res),
                            "q = {}, d = ({d1}, {d2}), cell {res:?}",
                            ctx.q()
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn distribution_totals_and_exclusions() {
    for (p, n) in prime_powers(27) {
        let ctx = FieldCtx::new(p, n).unwrap();
        let divs = arith::divisors(ctx.q() - 1);
        for (a, b) in pool_pairs(&ctx) {
            let d = *divs.iter().filter(|&&d| d <= 6).max().unwrap();
            let spec = TupleSpec::new(&ctx, vec![a.clone(), b.clone()], vec![d, d]).unwrap();
            let dist = counting::full_distribution(&ctx, &spec).unwrap();
            assert_eq!(dist.observed_total() + dist.excluded, ctx.q());
            // The exclusion count is the number of points where the
            // product vanishes, found by element-level evaluation.
            let prod = poly::mul(&ctx, &a, &b);
            let zeros = ctx
                .elements()
                .filter(|y| poly::eval(&ctx, &prod, y).is_zero())
                .count() as u64;
            assert_eq!(dist.excluded, zeros);
        }
    }
}

#[test]
fn quadrants_match_pair_distribution() {
    // The sign cross-tabulation of (f(y), y) is the (d1, d2) = (2, 2)
    // distribution of the tuple (f, x), computed by separate sweeps.
    for (p, n) in [(7u64, 1u32), (13, 1), (5, 2), (3, 3)] {
        let ctx = FieldCtx::new(p, n).unwrap();
        for f_coeffs in [&[1u64, 1, 0, 1][..], &[2, 0, 1], &[1, 1]] {
            let f = fq(&ctx, f_coeffs);
            let qc = apps::square_quadrant_counts(&ctx, &f).unwrap();
            let spec =
                TupleSpec::new(&ctx, vec![f.clone(), fq(&ctx, &[0, 1])], vec![2, 2]).unwrap();
            let dist = counting::full_distribution(&ctx, &spec).unwrap();
            for i in 0..2u64 {
                for j in 0..2u64 {
                    assert_eq!(
                        qc.counts[i as usize][j as usize],
                        dist.count(&[i, j]).unwrap(),
                        "q = {}, f = {f_coeffs:?}, cell ({i}, {j})",
                        ctx.q()
                    );
                }
            }
        }
    }
}

#[test]
fn coset_indicators_sum_to_coset_sizes() {
    for (p, n) in prime_powers(27) {
        let ctx = FieldCtx::new(p, n).unwrap();
        let cc = CharCtx::new(&ctx);
        let m = ctx.q() - 1;
        for d in arith::divisors(m.max(1)) {
            for a in 0..d {
                let mut re = 0.0;
                let mut im = 0.0;
                for y in 0..ctx.q() as usize {
                    let v = charsum::coset_indicator(&cc, y, a, d).unwrap();
                    re += v.re;
                    im += v.im;
                }
                assert!((re - (m / d) as f64).abs() < 1e-9, "q = {}, d = {d}, a = {a}", ctx.q());
                assert!(im.abs() < 1e-9);
            }
        }
    }
}

#[test]
fn character_orthogonality_exhaustive() {
    for (p, n) in prime_powers(49) {
        let ctx = FieldCtx::new(p, n).unwrap();
        let cc = CharCtx::new(&ctx);
        let m = ctx.q() - 1;
        for k in 0..m.max(1) {
            let chi = MultChar::of_index(&ctx, k);
            let mut sum = num_sum(&cc, &chi, &ctx);
            if chi.is_trivial() {
                sum.0 -= m as f64; // trivial characters sum to q - 1
            }
            assert!(
                sum.0.abs() < 1e-9 && sum.1.abs() < 1e-9,
                "q = {}, k = {k}",
                ctx.q()
            );
        }
    }
}

fn num_sum(cc: &CharCtx<'_>, chi: &MultChar, ctx: &FieldCtx) -> (f64, f64) {
    let mut re = 0.0;
    let mut im = 0.0;
    for r in 0..ctx.q() as usize {
        let v = cc.eval_rank(chi, r);
        re += v.re;
        im += v.im;
    }
    (re, im)
}

#[test]
fn character_multiplicativity_exhaustive() {
    for (p, n) in [(7u64, 1u32), (2, 4), (3, 2), (13, 1)] {
        let ctx = FieldCtx::new(p, n).unwrap();
        let cc = CharCtx::new(&ctx);
        let m = ctx.q() - 1;
        for k in 0..m {
            let chi = MultChar::of_index(&ctx, k);
            for a in 1..ctx.q() as usize {
                for b in 1..ctx.q() as usize {
                    let lhs = cc.eval_rank(&chi, ctx.mul_rank(a, b));
                    let rhs = cc.eval_rank(&chi, a) * cc.eval_rank(&chi, b);
                    assert!((lhs - rhs).norm() < 1e-9, "q = {}, k = {k}", ctx.q());
                }
            }
        }
    }
}

#[test]
fn factorization_exhaustive_small_fields() {
    // Every polynomial of bounded degree: reassembly, canonical ordering,
    // distinct-root consistency, and power-form detection as a consequence
    // of the multiplicity vectors.
    for (p, n, maxdeg) in [(2u64, 1u32, 4usize), (3, 1, 4), (2, 2, 3), (5, 1, 2)] {
        let ctx = FieldCtx::new(p, n).unwrap();
        let q = ctx.q() as usize;
        let mut coeffs = vec![0usize; maxdeg + 1];
        loop {
            let f = FqPoly::from_coeffs(coeffs.iter().map(|&r| ctx.elem_of(r)).collect());
            if !f.is_zero() {
                let fac = poly::factorize(&ctx, &f).unwrap();
                assert_eq!(fac.reassemble(&ctx), f);
                for w in fac.factors.windows(2) {
                    assert!(w[0].0 < w[1].0, "factors out of canonical order");
                }
                let mut degree_total = 0usize;
                let mut distinct = 0u64;
                for &(ref g, mult) in &fac.factors {
                    assert_eq!(g.leading(), Some(&ctx.one()));
                    assert!(mult >= 1);
                    degree_total += g.degree().unwrap() * mult as usize;
                    distinct += g.degree().unwrap() as u64;
                }
                assert_eq!(degree_total, f.degree().unwrap());
                assert_eq!(poly::distinct_root_count(&ctx, &f).unwrap(), distinct);
                for l in 1..=3u64 {
                    let form = poly::is_power_form(&ctx, &f, l).unwrap();
                    let divisible = fac.factors.iter().all(|&(_, m)| m as u64 % l == 0);
                    assert_eq!(form.is_some(), divisible || f.degree() == Some(0));
                    if let Some((u, g)) = form {
                        let expanded = poly::scale(&ctx, &poly::pow(&ctx, &g, l), &u);
                        assert_eq!(expanded, f);
                    }
                }
            }
            // Next coefficient vector, counting in base q.
            let mut i = 0;
            loop {
                if i > maxdeg {
                    break;
                }
                coeffs[i] += 1;
                if coeffs[i] < q {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
            if i > maxdeg {
                break;
            }
        }
    }
}

#[test]
fn independence_verdicts_and_identities() {
    // A dependent pair carries a witness whose log identity holds at every
    // admissible point; independence is stable under field extension for
    // tuples of distinct linear polynomials.
    for (p, n) in [(13u64, 1u32), (7, 1), (3, 2), (5, 2)] {
        let ctx = FieldCtx::new(p, n).unwrap();
        let x = fq(&ctx, &[0, 1]);
        let x1 = fq(&ctx, &[1, 1]);
        let indep_spec = TupleSpec::new(&ctx, vec![x.clone(), x1], vec![2, 2]).unwrap();
        assert!(indep::check_independence(&ctx, &indep_spec)
            .unwrap()
            .is_independent());
        let dep_spec = TupleSpec::new(&ctx, vec![x.clone(), x], vec![2, 2]).unwrap();
        match indep::check_independence(&ctx, &dep_spec).unwrap() {
            IndepVerdict::Dependent(w) => {
                let rep = indep::dependence_identity(&ctx, &dep_spec, &w).unwrap();
                assert!(rep.holds);
                assert_eq!(rep.checked + rep.skipped, ctx.q());
                assert_eq!(rep.skipped, 1); // only y = 0
            }
            IndepVerdict::Independent => panic!("(x, x) must be dependent"),
        }
    }
    // A dependence whose polynomials vanish everywhere on the base field:
    // the identity holds vacuously, with every point skipped.
    let ctx = FieldCtx::new(3, 1).unwrap();
    let vanishing = poly::pow(&ctx, &fq(&ctx, &[0, 2, 0, 1]), 2); // (x^3 + 2x)^2
    let spec = TupleSpec::new(&ctx, vec![vanishing], vec![2]).unwrap();
    match indep::check_independence(&ctx, &spec).unwrap() {
        IndepVerdict::Dependent(w) => {
            let rep = indep::dependence_identity(&ctx, &spec, &w).unwrap();
            assert!(rep.holds);
            assert_eq!(rep.checked, 0);
            assert_eq!(rep.skipped, 3);
        }
        IndepVerdict::Independent => panic!("a square must be 2-dependent"),
    }
}

#[test]
fn positivity_report_consistency() {
    // Above the threshold every cell is populated; the report's pieces
    // agree with a recount.
    let ctx = FieldCtx::new(3, 4).unwrap(); // q = 81 > (2 * 4)^2
    let spec = TupleSpec::new(
        &ctx,
        vec![fq(&ctx, &[0, 1]), fq(&ctx, &[1, 1])],
        vec![2, 2],
    )
    .unwrap();
    let rep = counting::positivity_check(&ctx, &spec).unwrap();
    assert!(rep.independent && rep.sufficient && rep.guaranteed);
    assert!(rep.all_nonempty);
    let dist = counting::full_distribution(&ctx, &spec).unwrap();
    assert_eq!(rep.min_count, dist.counts.iter().copied().min().unwrap());
    // Every cell passes the deviation check for this independent tuple.
    for &c in &dist.counts {
        assert!(counting::deviation_check(&ctx, &spec, c).unwrap().holds);
    }
}

#[test]
fn subspace_census_partitions_the_space() {
    let ctx = FieldCtx::new(2, 4).unwrap();
    for (basis, ranks) in all_subspaces(&ctx) {
        let space = AffineSpace::new(&ctx, ctx.zero(), basis).unwrap();
        assert_eq!(space.size(&ctx) as usize, ranks.len());
        for d in arith::divisors(ctx.q() - 1) {
            let rep = apps::subspace_log_distribution(&ctx, &space, d).unwrap();
            assert_eq!(rep.counts.iter().sum::<u64>() + rep.excluded, rep.size);
            assert_eq!(rep.excluded, 1, "a linear space contains zero");
        }
    }
}

#[test]
fn digit_census_partitions_the_field() {
    // Hyperplane slices through every digit value partition F_q; summing
    // the class counts over all values of the functional recovers the
    // whole-field residue census.
    let mut rnd = rng(42);
    for (p, n) in [(3u64, 2u32), (5, 2), (2, 4)] {
        let ctx = FieldCtx::new(p, n).unwrap();
        let q = ctx.q();
        // A random invertible basis exercises the change of coordinates.
        let basis = loop {
            let cand: Vec<_> = (0..n)
                .map(|_| ctx.elem_of(rnd.gen_range(1..q as usize)))
                .collect();
            if let Ok(b) = DigitBasis::new(&ctx, cand) {
                break b;
            }
        };
        // Digits reconstruct the element.
        for r in 0..q as usize {
            let v = ctx.elem_of(r);
            let digits = basis.digits(&ctx, &v);
            let mut acc = ctx.zero();
            for (dg, b) in digits.iter().zip(basis.basis()) {
                acc = ctx.add(&acc, &ctx.mul(&ctx.scalar(*dg), b));
            }
            assert_eq!(acc, v);
        }
        for d in arith::divisors(q - 1).into_iter().filter(|&d| d <= 8) {
            let mut totals = vec![0u64; d as usize];
            let mut excluded = 0u64;
            for c in 0..p {
                let rep = apps::digit_sum_counts(&ctx, &basis, c, d).unwrap();
                assert_eq!(
                    rep.counts.iter().sum::<u64>() + rep.excluded,
                    rep.hyperplane_size
                );
                for (t, &v) in totals.iter_mut().zip(&rep.counts) {
                    *t += v;
                }
                excluded += rep.excluded;
            }
            assert_eq!(excluded, 1, "zero lies on exactly one slice");
            for (a, &t) in totals.iter().enumerate() {
                assert_eq!(t, (q - 1) / d, "q = {q}, d = {d}, class {a}");
            }
        }
    }
}

#[test]
fn weil_reports_exhaustive_small_field() {
    // Every monic cubic over F_5 against every nontrivial character: the
    // report's magnitude matches a freshly computed sum and the bound
    // holds whenever the report says it applies.
    let ctx = FieldCtx::new(5, 1).unwrap();
    let cc = CharCtx::new(&ctx);
    for k in 1..4u64 {
        let chi = MultChar::of_index(&ctx, k);
        for a in 0..5u64 {
            for b in 0..5u64 {
                for c in 0..5u64 {
                    let f = fq(&ctx, &[c, b, a, 1]);
                    let rep = charsum::weil_bound_check(&cc, &chi, &f).unwrap();
                    let direct = charsum::weil_sum(&cc, &chi, &f);
                    assert!((direct.norm() - rep.magnitude).abs() < 1e-9);
                    assert!(rep.pass);
                    if rep.applicable {
                        assert!(rep.magnitude <= rep.bound + 1e-6);
                    }
                }
            }
        }
    }
}
