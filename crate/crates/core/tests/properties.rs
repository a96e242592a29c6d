use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

use extraspecial::cli::commands::{random_element, seeded_rng};
use extraspecial::esp::{self, EspParams};
use extraspecial::modlin::{self, Residue};
use extraspecial::mp::MpParams;
use extraspecial::np::{NpElement, NpParams};
use extraspecial::showcase::{Dihedral, Quaternion};

const PRIMES: [u64; 6] = [3, 5, 29, 1009, 4294967291, (1 << 61) - 1];

fn esp_params() -> impl Strategy<Value = EspParams> {
    (prop::sample::select(&PRIMES[..]), 0usize..4, 0usize..4)
        .prop_filter("at least one factor", |(_, r, s)| r + s > 0)
        .prop_map(|(p, r, s)| EspParams::new(p, r, s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn congruence_solutions_are_exact(n in 1u128..400, a in 0u128..400, b in 0u128..400) {
        let (a, b) = (Residue::new(a, n), Residue::new(b, n));
        let brute: Vec<u128> = (0..n).filter(|&x| (a * Residue::new(x, n)) == b).collect();
        match modlin::solve_congruence(a, b) {
            Some(sol) => {
                let listed: Vec<u128> = sol.iter().map(|x| x.value()).collect();
                prop_assert_eq!(listed, brute);
            }
            None => prop_assert!(brute.is_empty()),
        }
    }

    #[test]
    fn two_var_is_lexicographically_least(n in 1u128..60, a in 0u128..60, b in 0u128..60, c in 0u128..60) {
        let r = |v| Residue::new(v, n);
        let brute = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| r(a) * r(x) + r(b) * r(y) == r(c));
        let got = modlin::solve_two_var(r(a), r(b), r(c)).map(|(x, y)| (x.value(), y.value()));
        prop_assert_eq!(got, brute);
    }

    #[test]
    fn wide_residue_arithmetic(a in any::<u128>(), b in any::<u128>(), n in 1u128..(1 << 127)) {
        let (x, y) = (Residue::new(a % n, n), Residue::new(b % n, n));
        let big = (BigInt::from(a % n) * BigInt::from(b % n)).mod_floor(&BigInt::from(n));
        prop_assert_eq!(BigInt::from((x * y).value()), big);
        prop_assert_eq!((x + y - y).value(), x.value());
    }

    #[test]
    fn esp_group_axioms(params in esp_params(), seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let [a, b, c] = [0; 3].map(|_| random_element(&params, &mut rng));
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert!((a.clone() * a.inv()).is_identity());
        prop_assert_eq!(a.clone() * params.identity(), a.clone());
        // ζ is central
        let z = params.zeta_pow(1);
        prop_assert_eq!(a.clone() * z.clone(), z * a.clone());
    }

    #[test]
    fn esp_conjugation_is_an_action(params in esp_params(), seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let [g, h1, h2, k] = [0; 4].map(|_| random_element(&params, &mut rng));
        prop_assert_eq!(g.conjugate_by(&(h1.clone() * h2.clone())), g.conjugate_by(&h1).conjugate_by(&h2));
        prop_assert_eq!((g.clone() * k.clone()).conjugate_by(&h1), g.conjugate_by(&h1) * k.conjugate_by(&h1));
        prop_assert_eq!(g.conjugate_by(&h1), h1.inv() * g.clone() * h1.clone());
    }

    #[test]
    fn esp_solver_round_trip(params in esp_params(), seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let g = random_element(&params, &mut rng);
        let h = random_element(&params, &mut rng);
        let g2 = g.conjugate_by(&h);
        let out = esp::solve_csp(&g, &g2).unwrap();
        prop_assert!(esp::verify(&g, &g2, out.conjugator().unwrap()));
        prop_assert!(esp::is_conjugate(&g, &g2));
        let other = random_element(&params, &mut rng);
        prop_assert_eq!(esp::solve_csp(&g, &other).unwrap().is_solved(), esp::is_conjugate(&g, &other));
    }

    #[test]
    fn mp_axioms(p in prop::sample::select(&PRIMES[..]), xs in prop::array::uniform6(any::<u128>())) {
        let m = MpParams::new(p).unwrap();
        let q = p as u128;
        let e = |i: usize| m.element(xs[i] % (q * q), xs[i + 1] % q);
        let (a, b, c) = (e(0), e(2), e(4));
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert!((a * a.inv()).is_identity());
        prop_assert_eq!(a.conjugate_by(&b), b.inv() * a * b);
    }

    #[test]
    fn np_matrix_homomorphism(p in prop::sample::select(&PRIMES[..]), xs in prop::array::uniform6(any::<u128>())) {
        let n = NpParams::new(p).unwrap();
        let q = p as u128;
        let a = n.element(xs[0] % q, xs[1] % q, xs[2] % q);
        let b = n.element(xs[3] % q, xs[4] % q, xs[5] % q);
        prop_assert_eq!((a * b).to_matrix(), a.to_matrix() * b.to_matrix());
        prop_assert_eq!(NpElement::from_matrix(&a.to_matrix()).unwrap(), a);
        prop_assert_eq!(a.conjugate_by(&b), b.inv() * a * b);
    }

    #[test]
    fn dihedral_quaternion_axioms(bits in 1u32..64, xs in prop::array::uniform3(any::<u64>()), js in prop::array::uniform3(0u8..2)) {
        let d = Dihedral::new(1u128 << bits).unwrap();
        let de = |k: usize| d.element(xs[k] as u128 % d.n(), js[k]).unwrap();
        prop_assert_eq!((de(0) * de(1)) * de(2), de(0) * (de(1) * de(2)));
        prop_assert_eq!(de(0) * de(0).inv(), d.identity());
        let q = Quaternion::new(bits + 2).unwrap();
        let qe = |k: usize| q.element(xs[k] as u128 % q.big_n(), js[k]).unwrap();
        prop_assert_eq!((qe(0) * qe(1)) * qe(2), qe(0) * (qe(1) * qe(2)));
        prop_assert_eq!(qe(0) * qe(0).inv(), q.identity());
    }
}
