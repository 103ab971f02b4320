use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use skewlab_core::bitstring::all_strings;
use skewlab_core::constructions::{enumerate_fibonacci, is_antichain};
use skewlab_core::solver::{exact_m, SolveOptions};
use skewlab_core::{BitString, Family};

/// Skewincidence straight from the definition, on text literals.
fn by_definition(x: &BitString, y: &BitString) -> bool {
    let (x, y) = (x.to_string().into_bytes(), y.to_string().into_bytes());
    (1..x.len()).any(|i| (x[i - 1] == b'1' && y[i] == b'1') || (x[i] == b'1' && y[i - 1] == b'1'))
}

fn random_string(rng: &mut Xoshiro256PlusPlus, n: usize) -> BitString {
    let bits = if n == 64 { rng.next_u64() } else { rng.next_u64() & ((1 << n) - 1) };
    BitString::from_bits(n, bits).unwrap()
}

fn check_pair(x: &BitString, y: &BitString) {
    let expected = by_definition(x, y);
    assert_eq!(x.skewincident(y).unwrap(), expected, "{x} {y}");
    assert_eq!(y.skewincident(x).unwrap(), expected, "{y} {x}");
    assert_eq!(x.bits() & y.influence().bits() != 0, expected);
    assert_eq!(y.bits() & x.influence().bits() != 0, expected);
}

#[test]
fn influence_characterisation_exhaustive_to_12() {
    for n in 1..=12 {
        let all: Vec<BitString> = all_strings(n).unwrap().collect();
        for x in &all {
            let ix = x.influence().bits();
            for y in &all {
                let iy = y.influence().bits();
                let skew = x.skewincident(y).unwrap();
                assert_eq!(x.bits() & iy != 0, skew);
                assert_eq!(y.bits() & ix != 0, skew);
            }
        }
        // The definition is slow; spot-check it on a stride of pairs.
        for x in all.iter().step_by(7) {
            for y in all.iter().step_by(11) {
                check_pair(x, y);
            }
        }
    }
}

#[test]
fn influence_characterisation_on_random_pairs() {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(20);
    for k in 0..1_000_000u64 {
        let n = 1 + (k % 64) as usize;
        let x = random_string(&mut rng, n);
        // Sparse strings keep both answers common.
        let y = BitString::from_bits(n, random_string(&mut rng, n).bits() & random_string(&mut rng, n).bits()).unwrap();
        let expected = x.bits() & y.influence().bits() != 0;
        assert_eq!(x.skewincident(&y).unwrap(), expected);
        assert_eq!(y.bits() & x.influence().bits() != 0, expected);
        if k % 97 == 0 {
            check_pair(&x, &y);
        }
    }
}

#[test]
fn reversal_invariance() {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(7);
    for _ in 0..100_000 {
        let n = 1 + (rng.next_u64() % 64) as usize;
        let (x, y) = (random_string(&mut rng, n), random_string(&mut rng, n));
        assert_eq!(x.reversed().gamma(), x.gamma());
        assert_eq!(x.reversed().skewincident(&y.reversed()).unwrap(), x.skewincident(&y).unwrap());
        assert_eq!(x.reversed().reversed(), x);
    }
}

#[test]
fn extremal_families_meet_fibonacci_in_antichains() {
    for n in 1..=10 {
        let r = exact_m(n, &SolveOptions { allow_large: true, ..Default::default() }).unwrap();
        let family = Family::from_members(n, r.witness.iter().map(|s| s.parse().unwrap())).unwrap();
        let meet = family.intersection(&enumerate_fibonacci(n).unwrap());
        assert!(is_antichain(&meet), "n = {n}");
    }
}
