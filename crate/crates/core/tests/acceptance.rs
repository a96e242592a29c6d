//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::{BTreeSet, HashSet};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use extraspecial::cli::commands::{self, random_element, seeded_rng};
use extraspecial::cli::json::{self, ElementJson, GroupJson, InstanceFile};
use extraspecial::esp::{self, EspParams};
use extraspecial::modlin::count_congruence_solves;
use extraspecial::mp::MpParams;
use extraspecial::np::NpParams;
use extraspecial::oracle::{FiniteGroup, SmallGroup, enumerate_group};
use extraspecial::showcase::{
    Dihedral, DihedralElement, Quaternion, QuaternionElement, dihedral_coset_intersect, quaternion_coset_intersect,
};
use extraspecial::{Residue, mp, np};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg.into()) }
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn s(v: &str) -> Option<String> {
    Some(v.to_string())
}

fn mp_elem(a: &str, b: &str) -> ElementJson {
    ElementJson { a: s(a), b: s(b), ..Default::default() }
}

fn np_elem(a: &str, b: &str, c: &str) -> ElementJson {
    ElementJson { a: s(a), b: s(b), c: s(c), ..Default::default() }
}

fn criterion_1() -> Outcome {
    let file: InstanceFile = json::read_json(&data("p29.json")).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let rep = commands::solve(&file, false).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    check(rep.conjugate && rep.verified, "solver did not return a verified conjugator")?;
    check(elapsed < Duration::from_millis(10), format!("solve took {elapsed:?}"))?;

    let known = commands::verify(&file, None).map_err(|e| e.to_string())?;
    check(known.valid, "x1^14 z2^26 rejected")?;

    // h' t = x^826 y^2 in M(29) and k' t^{-1} = x^22 y^4 z^23 in N(29), t = x^29
    let m29 = MpParams::new(29).unwrap();
    let t = Residue::one(29);
    check(m29.element(797, 2).shift_center(t) == m29.element(826, 2), "h't != x^826 y^2")?;
    let n29 = NpParams::new(29).unwrap();
    check(n29.element(22, 5, 23).shift_center(-t) == n29.element(22, 4, 23), "k't^-1 != x^22 y^4 z^23")?;
    let h_side = InstanceFile {
        group: GroupJson::Mp { p: "29".into() },
        g_tilde: mp_elem("14", "2"),
        g_prime: mp_elem("826", "2"),
        known_conjugator: None,
        seed: None,
    };
    check(commands::verify(&h_side, Some(&mp_elem("14", "0"))).unwrap().valid, "x^14 does not map h~ to h't")?;
    let k_side = InstanceFile {
        group: GroupJson::Np { p: "29".into() },
        g_tilde: np_elem("22", "12", "23"),
        g_prime: np_elem("22", "4", "23"),
        known_conjugator: None,
        seed: None,
    };
    check(commands::verify(&k_side, Some(&np_elem("0", "0", "26"))).unwrap().valid, "z^26 does not map k~ to k't^-1")?;
    Ok(format!("solved in {elapsed:?}, known conjugator and intermediates verified"))
}

/// Solver existence and verification against brute force on every pair.
fn sweep_pairs<G: FiniteGroup>(
    g: &G,
    solve: impl Fn(&G::Elem, &G::Elem) -> Option<G::Elem>,
    decide: impl Fn(&G::Elem, &G::Elem) -> bool,
    conj: impl Fn(&G::Elem, &G::Elem) -> G::Elem,
) -> Result<usize, String> {
    let sg = enumerate_group(g, 4096).map_err(|e| e.to_string())?;
    let mut pairs = 0;
    for a in sg.elements() {
        for b in sg.elements() {
            pairs += 1;
            let truth = sg.brute_csp(a, b).unwrap().is_some();
            let got = solve(a, b);
            check(got.is_some() == truth, format!("existence mismatch on {a:?}, {b:?}"))?;
            check(decide(a, b) == truth, format!("decision mismatch on {a:?}, {b:?}"))?;
            if let Some(h) = got {
                check(conj(a, &h) == *b, format!("conjugator for {a:?}, {b:?} fails"))?;
            }
        }
    }
    Ok(pairs)
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    for p in [3, 5] {
        pairs += sweep_pairs(&MpParams::new(p).unwrap(), mp::solve_csp, mp::is_conjugate, |a, h| a.conjugate_by(h))?;
        pairs += sweep_pairs(&NpParams::new(p).unwrap(), np::solve_csp, np::is_conjugate, |a, h| a.conjugate_by(h))?;
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(60), format!("took {elapsed:?}"))?;
    Ok(format!("{pairs} pairs agree in {elapsed:?}"))
}

const ESP_SHAPES: [(usize, usize); 3] = [(2, 0), (1, 1), (0, 2)];

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    for (r, s) in ESP_SHAPES {
        let params = EspParams::new(3, r, s).unwrap();
        let sg = enumerate_group(&params, 4096).map_err(|e| e.to_string())?;
        let n = sg.order();
        for a in 0..n {
            for b in 0..n {
                pairs += 1;
                let truth = (0..n).any(|h| sg.conj(a, h) == b);
                let (ga, gb) = (sg.element(a), sg.element(b));
                let out = esp::solve_csp(ga, gb).map_err(|e| e.to_string())?;
                check(out.is_solved() == truth, format!("({r},{s}): mismatch on {ga}, {gb}"))?;
                check(esp::is_conjugate(ga, gb) == truth, format!("({r},{s}): decision mismatch"))?;
                if let Some(h) = out.conjugator() {
                    check(esp::verify(ga, gb, h), "conjugator fails")?;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(600), format!("took {elapsed:?}"))?;
    Ok(format!("{pairs} pairs agree in {elapsed:?}"))
}

/// Class count and shape of every class; `zeta_coset(g)` is `g<ζ>`.
fn class_structure<G: FiniteGroup>(
    g: &G,
    p: usize,
    expected: usize,
    zeta_coset: impl Fn(&G::Elem) -> HashSet<G::Elem>,
) -> Result<(), String> {
    let sg: SmallGroup<G::Elem> = enumerate_group(g, 4096).map_err(|e| e.to_string())?;
    let center: BTreeSet<usize> = sg.center().into_iter().collect();
    check(center.len() == p, format!("center has {} elements", center.len()))?;
    let classes = sg.conjugacy_classes();
    check(classes.len() == expected, format!("{} classes, expected {expected}", classes.len()))?;
    for c in classes {
        let first = *c.iter().next().unwrap();
        if center.contains(&first) {
            check(c.len() == 1, "central class is not a singleton")?;
        } else {
            let members: HashSet<G::Elem> = c.iter().map(|&i| sg.element(i).clone()).collect();
            check(members.len() == p, "non-central class size differs from p")?;
            check(members == zeta_coset(sg.element(first)), "non-central class is not g<ζ>")?;
        }
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let mut groups = 0;
    for p in [3u64, 5] {
        let pu = p as usize;
        let m = MpParams::new(p).unwrap();
        class_structure(&m, pu, pu * pu + pu - 1, |g| {
            (0..p as u128).map(|k| g.shift_center(Residue::new(k, p as u128))).collect()
        })?;
        let n = NpParams::new(p).unwrap();
        class_structure(&n, pu, pu * pu + pu - 1, |g| {
            (0..p as u128).map(|k| g.shift_center(Residue::new(k, p as u128))).collect()
        })?;
        groups += 2;
    }
    for (r, s) in ESP_SHAPES {
        let e = EspParams::new(3, r, s).unwrap();
        let expected = 3usize.pow(2 * (r + s) as u32) + 2;
        class_structure(&e, 3, expected, |g| (0..3).map(|k| g.shift_center(Residue::new(k, 3))).collect())?;
        groups += 1;
    }
    Ok(format!("{groups} groups have p^(2(r+s)) + p - 1 classes of the expected shape"))
}

fn criterion_5() -> Outcome {
    let mut rng = seeded_rng(5);
    let mut counts_by_size: Vec<(usize, BTreeSet<u64>)> = Vec::new();
    for c in [1usize, 2, 4, 8, 16, 32] {
        let mut seen = BTreeSet::new();
        for bits in [16u32, 24, 32, 40, 48, 56, 62] {
            let p = commands::prime_below_pow2(bits).unwrap();
            let params = EspParams::new(p, c.div_ceil(2), c / 2).unwrap();
            for _ in 0..5 {
                let g = random_element(&params, &mut rng);
                let h = random_element(&params, &mut rng);
                let g2 = g.conjugate_by(&h);
                let (out, solves) = count_congruence_solves(|| esp::solve_csp(&g, &g2));
                check(out.unwrap().is_solved(), "constructed instance refused")?;
                check(solves <= 3 * c as u64 + 1, format!("{solves} solves at r+s = {c}, {bits} bits"))?;
                seen.insert(solves);
            }
        }
        check(seen.len() == 1, format!("solve counts {seen:?} vary with p at r+s = {c}"))?;
        counts_by_size.push((c, seen));
    }

    let params = EspParams::new((1 << 61) - 1, 16, 16).unwrap();
    let mut times = Vec::new();
    for _ in 0..20 {
        let g = random_element(&params, &mut rng);
        let h = random_element(&params, &mut rng);
        let g2 = g.conjugate_by(&h);
        let start = Instant::now();
        let out = esp::solve_csp(&g, &g2).unwrap();
        times.push(start.elapsed());
        check(out.is_solved(), "refused")?;
    }
    let worst = *times.iter().max().unwrap();
    check(worst < Duration::from_millis(50), format!("slowest instance took {worst:?}"))?;
    let summary: Vec<String> = counts_by_size.iter().map(|(c, s)| format!("{c}:{}", s.first().unwrap())).collect();
    Ok(format!("solves per r+s [{}], worst {worst:?} at p = 2^61-1, r+s = 32", summary.join(" ")))
}

fn dihedral_sweep(n: u128) -> Result<usize, String> {
    let d = Dihedral::new(n).unwrap();
    let sg = enumerate_group(&d, 4096).unwrap();
    let all = sg.elements();
    let mut cases = 0;
    for (hi, h) in all.iter().enumerate() {
        for (ui, u) in all.iter().enumerate() {
            for (ki, k) in all.iter().enumerate() {
                for (vi, v) in all.iter().enumerate() {
                    cases += 1;
                    let truth = sg.coset_intersect_indices(hi, ui, ki, vi);
                    match dihedral_coset_intersect(h, u, k, v).unwrap() {
                        Some((e, _)) => check(truth.contains(&sg.index_of(&e).unwrap()), format!("D{n}: wrong element"))?,
                        None => check(truth.is_empty(), format!("D{n}: missed a common element"))?,
                    }
                }
            }
        }
    }
    Ok(cases)
}

fn quaternion_sweep(n: u32) -> Result<usize, String> {
    let q = Quaternion::new(n).unwrap();
    let sg = enumerate_group(&q, 4096).unwrap();
    let all = sg.elements();
    let mut cases = 0;
    for (hi, h) in all.iter().enumerate() {
        for (ui, u) in all.iter().enumerate() {
            for (ki, k) in all.iter().enumerate() {
                for (vi, v) in all.iter().enumerate() {
                    cases += 1;
                    let truth = sg.coset_intersect_indices(hi, ui, ki, vi);
                    match quaternion_coset_intersect(h, u, k, v).unwrap() {
                        Some((e, _)) => check(truth.contains(&sg.index_of(&e).unwrap()), format!("Q{}: wrong element", 1 << n))?,
                        None => check(truth.is_empty(), format!("Q{}: missed a common element", 1 << n))?,
                    }
                }
            }
        }
    }
    Ok(cases)
}

fn criterion_6() -> Outcome {
    let mut cases = 0;
    for n in 1..=8 {
        cases += dihedral_sweep(n)?;
    }
    for n in [3, 4] {
        cases += quaternion_sweep(n)?;
    }

    let mut rng = seeded_rng(6);
    let mut draw = |m: u128| Residue::new(commands::draw_residue(&mut rng, u64::MAX) % m, m);
    let big = 1u128 << 32;
    let d = Dihedral::new(big).unwrap();
    let q = Quaternion::new(32).unwrap();
    let mut worst = Duration::ZERO;
    for t in 0..200 {
        let bit = |k: u32| ((t >> k) & 1) as u8;
        let de = |i: Residue, j: u8| d.element(i.value(), j).unwrap();
        let (h, u, v, a, b) = (de(draw(big), bit(0)), de(draw(big), bit(1)), de(draw(big), bit(2)), de(draw(big), bit(3)), de(draw(big), bit(4)));
        let common: DihedralElement = h * (a * u * a.inv());
        let k = common * (b * v * b.inv()).inv();
        let start = Instant::now();
        let (e, w) = dihedral_coset_intersect(&h, &u, &k, &v).unwrap().ok_or("D_{2^32}: constructed instance missed")?;
        worst = worst.max(start.elapsed());
        let g1 = de(w.i1, w.j1);
        let g2 = de(w.i2, w.j2);
        check(e == h * (g1 * u * g1.inv()) && e == k * (g2 * v * g2.inv()), "D_{2^32}: witness fails")?;

        let n_q = q.big_n();
        let qe = |i: Residue, j: u8| q.element(i.value(), j).unwrap();
        let (h, u, v, a, b) = (qe(draw(n_q), bit(0)), qe(draw(n_q), bit(1)), qe(draw(n_q), bit(2)), qe(draw(n_q), bit(3)), qe(draw(n_q), bit(4)));
        let common: QuaternionElement = h * u.conjugate_by(&a);
        let k = common * v.conjugate_by(&b).inv();
        let start = Instant::now();
        let (e, w) = quaternion_coset_intersect(&h, &u, &k, &v).unwrap().ok_or("Q: constructed instance missed")?;
        worst = worst.max(start.elapsed());
        let g1 = qe(w.i1, w.j1);
        let g2 = qe(w.i2, w.j2);
        check(e == h * u.conjugate_by(&g1) && e == k * v.conjugate_by(&g2), "Q: witness fails")?;
    }
    check(worst < Duration::from_millis(5), format!("slowest constructed instance took {worst:?}"))?;
    Ok(format!("{cases} quadruples with zero mismatches, constructed instances at 2^32 within {worst:?}"))
}

fn criterion_7() -> Outcome {
    let mut wins = 0;
    for seed in 0..100 {
        let t = commands::demo_keyexchange(1009, 2, 2, seed, false).map_err(|e| e.to_string())?;
        if t.keys_agree && t.attacker.success {
            wins += 1;
        }
    }
    check(wins == 100, format!("{wins}/100 attacks recovered the key"))?;
    for seed in 0..20 {
        let t = commands::demo_keyexchange(3, 1, 1, seed, true).map_err(|e| e.to_string())?;
        let o = t.oracle.ok_or("oracle missing")?;
        check(o.key == t.attacker.key && o.key == t.alice_key, format!("seed {seed}: brute-force key differs"))?;
    }
    Ok("100/100 at p = 1009, r = s = 2, brute-force keys match at p = 3".into())
}

fn run_bin(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_esp")).args(args).output().map_err(|e| e.to_string())?;
    check(out.status.success(), format!("esp {args:?} exited with {:?}", out.status.code()))?;
    Ok(out.stdout)
}

fn criterion_8() -> Outcome {
    let dir = std::env::temp_dir().join(format!("esp-accept-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let path = |n: &str| dir.join(n).to_string_lossy().into_owned();
    let mut compared = 0;
    for seed in ["1", "42", "18446744073709551615"] {
        let (a, b) = (path(&format!("a{seed}.json")), path(&format!("b{seed}.json")));
        run_bin(&["random", "--p", "2305843009213693951", "--r", "8", "--s", "8", "--seed", seed, "--out", &a])?;
        run_bin(&["random", "--p", "2305843009213693951", "--r", "8", "--s", "8", "--seed", seed, "--out", &b])?;
        check(std::fs::read(&a).unwrap() == std::fs::read(&b).unwrap(), "instance files differ")?;
        let s1 = run_bin(&["solve", "--in", &a])?;
        let s2 = run_bin(&["solve", "--in", &b])?;
        check(s1 == s2, "solve outputs differ")?;
        let t1 = run_bin(&["demo-keyexchange", "--p", "1009", "--r", "2", "--s", "2", "--seed", seed])?;
        let t2 = run_bin(&["demo-keyexchange", "--p", "1009", "--r", "2", "--s", "2", "--seed", seed])?;
        check(t1 == t2, "transcripts differ")?;
        compared += 3;
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{compared} output pairs byte-identical"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 p = 29 golden instance", criterion_1),
        ("2 M(p)/N(p) oracle equivalence", criterion_2),
        ("3 central-product oracle equivalence", criterion_3),
        ("4 class structure", criterion_4),
        ("5 congruence-solve complexity", criterion_5),
        ("6 dihedral/quaternion intersection", criterion_6),
        ("7 key-exchange attack", criterion_7),
        ("8 determinism", criterion_8),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(why) => {
                failed += 1;
                println!("criterion {name}: FAIL ({why})");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
