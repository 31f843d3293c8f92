//! Acceptance gate: one PASS/FAIL line per criterion with its wall-time
//! budget. Exits nonzero if any criterion fails or overruns.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use apn20::apn::{apn_scan, differential_uniformity, invariance_check, Transform};
use apn20::classify20::{
    apn_exclusion_evidence, appendix1_replay, build_family_a, build_family_b, ccz_witness,
    search_p1, verify_divisibility_a, verify_divisibility_b, CczOutcome, FamilyAParams,
    FamilyBParams, P1Divisor, WitnessKind,
};
use apn20::divisors::{replay_case_analysis, Convention, Divisor, Verdict, D};
use apn20::gf2n::{Field, TowerField};
use apn20::phi::{builtin_all, builtin_identity, check_identity, phi_of, IdentityParams};
use apn20::polyring::{parse_uni, UniPoly};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gf(n: u32) -> Field {
    Field::with_degree(n).unwrap()
}

fn identity_suite() -> Check {
    for n in [1, 3, 4] {
        let field = gf(n);
        for id in builtin_all(&field).map_err(|e| e.to_string())? {
            let r = check_identity(&id).map_err(|e| e.to_string())?;
            ensure(r.holds, || format!("over GF(2^{n}): {r}"))?;
        }
    }
    // the named instances, spelled out
    let field = gf(1);
    for (e, j) in [(3, 2), (5, 2)] {
        let p = IdentityParams {
            d: None,
            e: Some(e),
            j: Some(j),
        };
        let id = builtin_identity("a", &field, &p).map_err(|e| e.to_string())?;
        let r = check_identity(&id).map_err(|e| e.to_string())?;
        ensure(r.holds, || r.to_string())?;
    }
    Ok(())
}

fn kernel_property() -> Check {
    let field = gf(1);
    for bits in 0u32..(1 << 9) {
        let f = UniPoly::from_terms(&field, (0..9).filter(|e| bits >> e & 1 == 1).map(|e| (e, 1)));
        ensure(phi_of(&f).is_zero() == f.is_qaffine(), || format!("f = {f}"))?;
    }
    Ok(())
}

fn apn_ground_truth() -> Check {
    let field = gf(1);
    let odd: Vec<u32> = (2..=10).filter(|n| n % 2 == 1).collect();
    let cases: [(&str, Vec<u32>); 4] = [
        ("x^3", (2..=10).collect()),
        ("x^5", odd.clone()),
        ("x^20", odd),
        ("x^13", vec![3, 5, 7, 9]),
    ];
    for (src, expect) in cases {
        let f = parse_uni(&field, src).unwrap();
        let rows = apn_scan(&f, 2..=10);
        let got: Vec<u32> = rows.iter().filter(|r| r.is_apn() == Some(true)).map(|r| r.n).collect();
        ensure(rows.iter().all(|r| r.is_apn().is_some()), || format!("{src}: skipped rows"))?;
        ensure(got == expect, || format!("{src}: APN at {got:?}, expected {expect:?}"))?;
    }
    Ok(())
}

fn family_a_round_trip() -> Check {
    let base = gf(1);
    let t = TowerField::new(&base).unwrap();
    let ext = t.ext();
    for c in ext.elements().filter(|&c| t.trace(c) == 0) {
        for a in base.elements() {
            let p = FamilyAParams::simple(&t, c, a).map_err(|e| e.to_string())?;
            let r = appendix1_replay(&p).map_err(|e| e.to_string())?;
            for s in &r.slices {
                ensure(s.matches(), || {
                    format!("c1={c:#x} a={a}: Q_{} = {} expected {}", s.degree, s.actual, s.expected)
                })?;
            }
            ensure(r.passes(), || format!("c1={c:#x} a={a}: replay bookkeeping failed"))?;

            let (f, _) = build_family_a(&p).map_err(|e| e.to_string())?;
            let hits: Vec<u32> = search_p1(&f, &t)
                .map_err(|e| e.to_string())?
                .iter()
                .map(|h| h.bits())
                .collect();
            ensure(t.conjugates(c).iter().all(|g| hits.contains(g)), || {
                format!("c1={c:#x}: hits {hits:?} miss its orbit")
            })?;
            for &h in &hits {
                let dv = P1Divisor::from_c1(ext, h).map_err(|e| e.to_string())?;
                let d = verify_divisibility_a(&f, &dv, &t).map_err(|e| e.to_string())?;
                let holds = |name: &str| d.constraints.iter().any(|k| k.name == name && k.holds);
                ensure(d.divides && holds("tr(c1) = 0") && holds("d = c1^3"), || {
                    format!("hit {h:#x}: constraints fail")
                })?;
            }
        }
    }
    Ok(())
}

fn family_a_apn() -> Check {
    let base = gf(1);
    let l = parse_uni(&base, "x^4 + x^2 + x").unwrap();
    let f = l.pow(5);
    let x5 = UniPoly::x_pow(&base, 5);
    for (n, apn) in [(5, true), (7, true), (4, false)] {
        let field = gf(n);
        let rf = differential_uniformity(&f, &field).map_err(|e| e.to_string())?;
        let rx = differential_uniformity(&x5, &field).map_err(|e| e.to_string())?;
        ensure(rf.is_apn == apn, || format!("n={n}: delta(f) = {}", rf.delta))?;
        ensure(rf.delta == rx.delta, || {
            format!("n={n}: delta(f) = {} but delta(x^5) = {}", rf.delta, rx.delta)
        })?;
    }
    Ok(())
}

fn exclusion_evidence() -> Check {
    let base = gf(1);
    let t = TowerField::new(&base).unwrap();
    let p = FamilyAParams::simple(&t, 0b10, 1).map_err(|e| e.to_string())?;
    let ev = apn_exclusion_evidence(&p, [3, 5, 7, 9]).map_err(|e| e.to_string())?;
    ensure(ev.supported(), || "APN at every odd n <= 9".into())
}

fn family_b() -> Check {
    for n in [1, 3] {
        let base = gf(n);
        let t = TowerField::new(&base).unwrap();
        for a10 in base.elements() {
            for a5 in base.elements() {
                let p = FamilyBParams::new(&base, a10, a5, UniPoly::zero(&base))
                    .map_err(|e| e.to_string())?;
                let f = build_family_b(&p);
                let d = verify_divisibility_b(&f).map_err(|e| e.to_string())?;
                ensure(d.divides && d.factorization_ok, || format!("{f}: factorization"))?;
                let l = UniPoly::from_terms(&base, [(4, 1), (2, a10), (1, a5)]);
                match ccz_witness(&f, &t, None).map_err(|e| e.to_string())? {
                    CczOutcome::Witness(w) => ensure(
                        w.kind == WitnessKind::LinearOfPower && w.l == l,
                        || format!("{f}: witness {:?} L = {}", w.kind, w.l),
                    )?,
                    CczOutcome::NoWitness(nw) => return Err(format!("{f}: {nw:?}")),
                }
            }
        }
    }
    Ok(())
}

fn divisor_replay() -> Check {
    let r = replay_case_analysis(Convention::Verbatim);
    let survivors: Vec<Divisor> = r.survivors().iter().map(|c| c.x0).collect();
    let expect = [Divisor::new(1, 1, 1, 0, 0), Divisor::new(1, 1, 1, 1, 1)];
    ensure(survivors == expect, || format!("survivors {survivors:?}"))?;
    let last = r.cases.iter().find(|c| c.x0 == expect[1]).unwrap();
    ensure(
        last.residual == Some(Divisor::new(0, 0, 0, 1, 1))
            && last.orbit_sum + last.residual.unwrap() == D,
        || format!("residual {:?}", last.residual),
    )?;
    for c in &r.cases {
        ensure(c.table_agrees(), || format!("{}: table disagrees", c.x0))?;
        if !expect.contains(&c.x0) {
            ensure(c.verdict != Verdict::Survivor, || format!("{} survives", c.x0))?;
        }
    }
    ensure(r.cutoff.holds, || "degree cutoff".into())
}

fn random_linear_permutation(rng: &mut StdRng, field: &Field) -> UniPoly {
    loop {
        let l = UniPoly::from_terms(
            field,
            (0..field.degree()).map(|i| (1u32 << i, rng.gen_range(0..field.size() as u32))),
        );
        if l.is_permutation(field).unwrap() {
            return l;
        }
    }
}

fn invariance() -> Check {
    let field = gf(5);
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let fs = [
        parse_uni(&field, "x^5").unwrap(),
        parse_uni(&field, "x^20 + x^18 + x^17 + x^6 + x^4 + x^3").unwrap(),
        parse_uni(&field, "0x3*x^7 + x^6 + 0x11*x^3").unwrap(),
    ];
    for f in &fs {
        for _ in 0..50 {
            let g = UniPoly::from_terms(
                &field,
                [0u32, 1, 2, 4, 8, 16].map(|e| (e, rng.gen_range(0..32))),
            );
            let r = invariance_check(f, &Transform::AddQAffine(g.clone()), &field)
                .map_err(|e| e.to_string())?;
            ensure(r.holds, || format!("{f} + {g}: {r:?}"))?;
        }
        for _ in 0..20 {
            let l = random_linear_permutation(&mut rng, &field);
            for t in [Transform::PreCompose(l.clone()), Transform::PostCompose(l.clone())] {
                let r = invariance_check(f, &t, &field).map_err(|e| e.to_string())?;
                ensure(r.holds, || format!("{f} with {t:?}: {r:?}"))?;
            }
        }
    }
    Ok(())
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Check,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "identity suite (a)-(j) over GF(2), GF(2^3), GF(2^4)", budget: secs(5), run: identity_suite },
        Criterion { id: 2, name: "kernel of phi = q-affine, all 2^9 polys of degree <= 8", budget: secs(10), run: kernel_property },
        Criterion { id: 3, name: "Gold/Kasami APN ground truth, n = 2..10", budget: secs(120), run: apn_ground_truth },
        Criterion { id: 4, name: "family A replay and P1 search over GF(2) < GF(8)", budget: secs(60), run: family_a_round_trip },
        Criterion { id: 5, name: "(x^4+x^2+x)^5 APN at n = 5, 7, not at 4; delta = delta(x^5)", budget: secs(60), run: family_a_apn },
        Criterion { id: 6, name: "family A with a = 1 fails APN at some odd n <= 9", budget: secs(60), run: exclusion_evidence },
        Criterion { id: 7, name: "family B factorization and L(x^5) witness over GF(2), GF(2^3)", budget: secs(30), run: family_b },
        Criterion { id: 8, name: "divisor replay: two survivors, second sums to D", budget: secs(1), run: divisor_replay },
        Criterion { id: 9, name: "delta invariant under q-affine addition and linear permutations", budget: secs(60), run: invariance },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let took = start.elapsed();
        let verdict = match (&result, took <= c.budget) {
            (Ok(()), true) => "PASS",
            _ => "FAIL",
        };
        println!(
            "{verdict} {:>2}  {:<66} {:>8.3}s / {}s",
            c.id,
            c.name,
            took.as_secs_f64(),
            c.budget.as_secs()
        );
        if let Err(msg) = &result {
            println!("        {msg}");
        } else if took > c.budget {
            println!("        over budget");
        }
        if verdict == "FAIL" {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
