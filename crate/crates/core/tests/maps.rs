//! Property tests for generated maps: generator soundness and determinism, the
//! orthogonality invariants, classification covariance and the plane properties.

use proptest::prelude::*;

use hyperquadric::grassmann::{plane_from_chart, random_null_plane, random_plane, span_of_image, PlaneChart};
use hyperquadric::harness::{
    gen_null, gen_orthogonal_mixture, gen_quasi_standard, gen_standard, twist_target, GenSpec, Mixture,
};
use hyperquadric::hermitian::{norm_coords, Subspace};
use hyperquadric::maps::{
    classify, hermitian_pullback, is_null_map, is_orthogonal, is_standard, project, verify_quasi, Mode, RationalMap,
    Verdict,
};
use hyperquadric::random;
use hyperquadric::{Polynomial, Signature, GQ};

fn sig(r: usize, s: usize, t: usize) -> Signature {
    Signature::rst(r, s, t)
}

/// Signature pairs with room for an isometric copy of the source.
const STANDARD_PAIRS: [(Signature, Signature); 6] = [
    (Signature { r: 1, s: 1, t: 0 }, Signature { r: 1, s: 1, t: 0 }),
    (Signature { r: 1, s: 1, t: 0 }, Signature { r: 2, s: 2, t: 1 }),
    (Signature { r: 2, s: 1, t: 0 }, Signature { r: 3, s: 2, t: 0 }),
    (Signature { r: 2, s: 2, t: 0 }, Signature { r: 2, s: 3, t: 1 }),
    (Signature { r: 1, s: 2, t: 1 }, Signature { r: 2, s: 2, t: 2 }),
    (Signature { r: 1, s: 3, t: 0 }, Signature { r: 2, s: 3, t: 0 }),
];

/// Pairs that also leave room for a nontrivial null block.
const QUASI_PAIRS: [(Signature, Signature); 4] = [
    (Signature { r: 1, s: 1, t: 0 }, Signature { r: 2, s: 2, t: 1 }),
    (Signature { r: 1, s: 1, t: 0 }, Signature { r: 2, s: 2, t: 0 }),
    (Signature { r: 2, s: 1, t: 0 }, Signature { r: 3, s: 2, t: 1 }),
    (Signature { r: 2, s: 2, t: 0 }, Signature { r: 3, s: 3, t: 0 }),
];

fn standard_spec() -> impl Strategy<Value = GenSpec> {
    (0..STANDARD_PAIRS.len(), any::<u64>()).prop_map(|(i, seed)| {
        let (s, t) = STANDARD_PAIRS[i];
        GenSpec::new(s, t, 1, seed)
    })
}

fn quasi_spec() -> impl Strategy<Value = GenSpec> {
    (0..QUASI_PAIRS.len(), 2u32..=3, any::<u64>()).prop_map(|(i, d, seed)| {
        let (s, t) = QUASI_PAIRS[i];
        GenSpec::new(s, t, d, seed)
    })
}

fn null_spec() -> impl Strategy<Value = GenSpec> {
    (0..STANDARD_PAIRS.len(), 1u32..=3, any::<u64>()).prop_map(|(i, d, seed)| {
        let (s, t) = STANDARD_PAIRS[i];
        GenSpec::new(s, t, d, seed)
    })
}

/// Any orthogonal generated map.
fn orthogonal_map() -> impl Strategy<Value = RationalMap> {
    prop_oneof![
        standard_spec().prop_map(|s| gen_standard(&s).unwrap()),
        quasi_spec().prop_map(|s| gen_quasi_standard(&s).unwrap()),
        null_spec().prop_map(|s| gen_null(&s).unwrap()),
    ]
}

fn with_extra_degenerate_axis(f: &RationalMap) -> RationalMap {
    let t = f.target();
    let n = f.source().n();
    let mut comps = f.components().to_vec();
    comps.push(Polynomial::zero(n, 0));
    RationalMap::new(f.source(), sig(t.r, t.s, t.t + 1), comps).unwrap()
}

fn json(f: &RationalMap) -> String {
    serde_json::to_string(&f.descriptor()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generators_are_sound_and_deterministic(s in standard_spec(), q in quasi_spec(), n in null_spec()) {
        let f = gen_standard(&s).unwrap();
        prop_assert_eq!(is_standard(&f), Some(GQ::from_int(1)));
        prop_assert_eq!(json(&f), json(&gen_standard(&s).unwrap()));

        let g = gen_quasi_standard(&q).unwrap();
        let class = classify(&g);
        prop_assert_eq!(class.verdict, Verdict::QuasiStandard);
        let w = class.witness.unwrap();
        prop_assert!(verify_quasi(&g, w.a.as_ref().unwrap(), w.b.as_ref().unwrap(), Mode::Standard));
        prop_assert_eq!(json(&g), json(&gen_quasi_standard(&q).unwrap()));

        let h = gen_null(&n).unwrap();
        prop_assert!(is_null_map(&h));
        prop_assert!(is_orthogonal(&h).unwrap().orthogonal);
        prop_assert_eq!(json(&h), json(&gen_null(&n).unwrap()));
    }

    #[test]
    fn mixtures_are_orthogonal(i in 0..Mixture::ALL.len(), q in quasi_spec()) {
        let kind = Mixture::ALL[i];
        let f = gen_orthogonal_mixture(&q, kind).unwrap();
        prop_assert!(is_orthogonal(&f).unwrap().orthogonal, "{}: {}", kind.label(), f);
        prop_assert_eq!(json(&f), json(&gen_orthogonal_mixture(&q, kind).unwrap()));
    }

    #[test]
    fn pullback_on_the_diagonal_is_the_norm(f in orthogonal_map(), seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let z = random::vector(&mut rng, f.source().n(), 5);
        let point: Vec<GQ> = z.iter().cloned().chain(z.iter().map(GQ::conj)).collect();
        let lhs = hermitian_pullback(&f).eval(&point);
        prop_assert_eq!(lhs, GQ::from_real(norm_coords(&f.target(), &f.eval(&z))));
    }

    #[test]
    fn classification_is_invariant_under_target_isometries(f in orthogonal_map(), seed in any::<u64>()) {
        let g = twist_target(&f, seed);
        let (cf, cg) = (classify(&f), classify(&g));
        prop_assert_eq!(cf.verdict, cg.verdict);
        if let (Verdict::QuasiStandard, Some(w)) = (cg.verdict, cg.witness.as_ref()) {
            let (a, b) = (w.a.as_ref().unwrap(), w.b.as_ref().unwrap());
            prop_assert!(verify_quasi(&g, a, b, Mode::Standard));
            prop_assert_eq!(a.abc(), cf.witness.as_ref().unwrap().a.as_ref().unwrap().abc());
        }
    }

    #[test]
    fn extra_degenerate_axes_keep_the_verdict(f in orthogonal_map()) {
        let before = classify(&f).verdict;
        let after = classify(&with_extra_degenerate_axis(&f)).verdict;
        match before {
            Verdict::Null | Verdict::QuasiStandard | Verdict::QuasiLinear => prop_assert_eq!(after, before),
            Verdict::Standard => prop_assert!(matches!(after, Verdict::Standard | Verdict::QuasiStandard)),
            _ => {}
        }
    }

    #[test]
    fn projections_of_quasi_maps_stay_orthogonal(q in quasi_spec()) {
        let f = gen_quasi_standard(&q).unwrap();
        let w = classify(&f).witness.unwrap();
        let (a, b) = (w.a.unwrap(), w.b.unwrap());
        let pa = project(&f, &a, &b).unwrap();
        if is_orthogonal(&pa).unwrap().orthogonal {
            // An error means the whole image lies in A and the B part vanishes.
            if let Ok(pb) = project(&f, &b, &a) {
                prop_assert!(is_orthogonal(&pb).unwrap().orthogonal);
            }
        }
    }

    #[test]
    fn orthogonal_maps_send_null_planes_to_null_planes(f in orthogonal_map(), seed in any::<u64>()) {
        let src = f.source();
        let kmax = src.max_null_dimension();
        prop_assume!(kmax >= 0);
        let mut rng = random::rng(seed);
        let k = rng_pick(&mut rng, kmax as usize);
        let n = random_null_plane(&mut rng, src, k, 4).unwrap();
        prop_assert!(n.is_null());
        let image = match span_of_image(&f, &n) {
            // The plane lies in the indeterminacy locus: there is no image to test.
            Err(hyperquadric::Error::Indeterminate(_)) => return Ok(()),
            other => other.unwrap(),
        };
        prop_assert!(image.is_null(), "{} sends {} to {}", f, n, image);
    }

    #[test]
    fn image_spans_are_monotone(f in orthogonal_map(), seed in any::<u64>()) {
        let src = f.source();
        let mut rng = random::rng(seed);
        let big = random_plane(&mut rng, src, (src.n() - 1).min(2), 4);
        let small = Subspace::span(src, &big.basis()[..1]).unwrap();
        prop_assert!(small.is_subspace_of(&big));
        let bi = span_of_image(&f, &big).unwrap();
        if let Ok(si) = span_of_image(&f, &small) {
            prop_assert!(si.is_subspace_of(&bi));
        }
    }

    #[test]
    fn charts_are_faithful(seed in any::<u64>(), i in 0usize..3) {
        let s = [sig(1, 1, 0), sig(2, 2, 1), sig(2, 3, 0)][i];
        let mut rng = random::rng(seed);
        let c1 = PlaneChart::random(&mut rng, s, 2);
        let c2 = PlaneChart::random(&mut rng, s, 2);
        prop_assert_eq!(plane_from_chart(&c1) == plane_from_chart(&c2), c1 == c2);
        prop_assert_eq!(plane_from_chart(&c1), plane_from_chart(&c1.clone()));
    }
}

fn rng_pick(rng: &mut random::Rng, max: usize) -> usize {
    use rand::Rng as _;
    rng.gen_range(0..=max)
}

#[test]
fn zero_components_are_null() {
    let f = gen_null(&GenSpec::new(sig(1, 1, 0), sig(0, 0, 2), 2, 3)).unwrap();
    assert!(is_null_map(&f));
    assert!(hermitian_pullback(&f).is_zero());
}
