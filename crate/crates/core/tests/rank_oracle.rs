use border3::normal_forms::{orbit_rank, SigmaThreeSpec, SigmaType, ORBIT_IDS};
use border3::poly::Poly;
use border3::random::{random_gl, rng, small_int};
use border3::rank_oracle::{
    macaulay_membership, pencil, rank_over_field, rank_upper_bound, verify_certificate, FieldRank, Provenance,
};
use border3::rational::q;
use border3::Error;
use num_traits::Zero;
use rand::Rng as _;

#[test]
fn orbit_ranks_agree_across_primes() {
    for id in ORBIT_IDS {
        let t = Provenance::Orbit(id).tensor().unwrap();
        let expect = FieldRank::Exact(orbit_rank(id).unwrap());
        assert_eq!(rank_over_field(&t, 2, 6, 2).unwrap(), expect, "orbit {id} over F2");
        assert_eq!(rank_over_field(&t, 3, 6, 2).unwrap(), expect, "orbit {id} over F3");
    }
}

#[test]
fn field_rank_below_decomposition_length() {
    let mut g = rng(51);
    let mut provs: Vec<Provenance> = ORBIT_IDS.iter().map(|&id| Provenance::Orbit(id)).collect();
    provs.push(Provenance::Sigma2 { n: 4, j_set: vec![0, 1, 3], dims: vec![2; 4] });
    provs.push(Provenance::Sigma3(SigmaThreeSpec::new(SigmaType::III, 3)));
    provs.push(Provenance::Sigma3(SigmaThreeSpec::new(SigmaType::II, 3)));
    for p in provs {
        let t = p.tensor().unwrap();
        let d = rank_upper_bound(&p).unwrap();
        assert!(d.verify(&t).unwrap());
        for field in [2, 3] {
            // decompositions with denominators divisible by the prime do not reduce
            if d.terms.iter().flat_map(|(c, fs)| std::iter::once(c).chain(fs.iter().flatten())).any(|x| x.denom() % field == Zero::zero()) {
                continue;
            }
            let r = rank_over_field(&t, field as u32, 6, 2).unwrap().exact().unwrap();
            assert!(r <= d.len(), "{p:?} over F{field}");
        }
        let moved = Provenance::Transformed(Box::new(p.clone()), random_gl(&mut g, t.dims()));
        let dm = rank_upper_bound(&moved).unwrap();
        assert_eq!(dm.len(), d.len());
        assert!(dm.verify(&moved.tensor().unwrap()).unwrap());
    }
}

#[test]
fn reduction_mod_p_of_fractions() {
    let t = Provenance::Orbit(39).tensor().unwrap().scale(&border3::rational::qf(1, 2));
    assert!(rank_over_field(&t, 2, 3, 1).is_err());
    assert_eq!(rank_over_field(&t, 3, 3, 1).unwrap(), FieldRank::Exact(3));
    assert!(matches!(rank_over_field(&t, 3, 9, 1), Err(Error::InvalidArgument(_))));
}

#[test]
fn membership_is_always_certified() {
    let mut g = rng(52);
    let gens = pencil::generators();
    let mut found = 0;
    for _ in 0..20 {
        // random combination of generators with small constant multipliers, plus noise
        let mut target = Poly::zero(pencil::NVARS);
        for gen in &gens {
            target = target.add(&gen.scale(&small_int(&mut g, 2)));
        }
        if g.gen_bool(0.5) {
            target = target.add(&Poly::var(pencil::NVARS, 7).pow(2));
        }
        let r = macaulay_membership(&target, &gens, &pencil::PARAMS, 1).unwrap();
        if r.member {
            found += 1;
            assert!(verify_certificate(&target, &gens, r.certificate.as_ref().unwrap()));
        } else {
            assert!(r.certificate.is_none());
        }
    }
    assert!(found > 0);
}

#[test]
fn pencil_targets_need_bound_two() {
    let gens = pencil::generators();
    for t in pencil::targets() {
        for b in 0..2 {
            let r = macaulay_membership(&t, &gens, &pencil::PARAMS, b).unwrap();
            assert!(!r.member && r.bound_limited);
        }
        let r = macaulay_membership(&t, &gens, &pencil::PARAMS, 2).unwrap();
        let cert = r.certificate.unwrap();
        assert!(verify_certificate(&t, &gens, &cert));
        assert!(!verify_certificate(&t.scale(&q(2)), &gens, &cert));
    }
}
