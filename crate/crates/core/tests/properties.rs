use pg3q::cli::{format_certificate, Certificate};
use pg3q::geometry::{canonicalize, points_on, quadric, RawTuple};
use pg3q::gf::supported_orders;
use pg3q::search::{Provenance, Scan};
use pg3q::{
    line_count, meets, Execution, FieldTable, LineId, LineTable, SearchConfig, SearchContext,
    SpreadRecord, Strategy,
};
use proptest::prelude::*;

fn order() -> impl proptest::strategy::Strategy<Value = u32> {
    prop::sample::select(supported_orders(101))
}

fn small_order() -> impl proptest::strategy::Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 4, 5, 7, 8, 9])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms_hold(q in order(), a in any::<u8>(), b in any::<u8>(), c in any::<u8>()) {
        let f = FieldTable::new(q).unwrap();
        let (a, b, c) = ((a as u32 % q) as u8, (b as u32 % q) as u8, (c as u32 % q) as u8);
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        prop_assert_eq!(f.pow(a, q), a);
    }

    #[test]
    fn decode_encode_round_trip(q in order(), frac in 0.0f64..1.0) {
        let t = LineTable::for_order(q).unwrap();
        let i = ((frac * line_count(q) as f64) as u64).min(line_count(q) - 1);
        let l = t.decode(i).unwrap();
        prop_assert_eq!(quadric(t.field(), &l.coords()), 0);
        prop_assert_eq!(t.encode(&l).unwrap() as u64, i);
    }

    #[test]
    fn canonical_form_ignores_scaling(q in order(), frac in 0.0f64..1.0, s in 1u32..256) {
        let t = LineTable::for_order(q).unwrap();
        let f = t.field();
        let i = ((frac * line_count(q) as f64) as u64).min(line_count(q) - 1);
        let l = t.decode(i).unwrap();
        let s = (1 + s % (q - 1)) as u8;
        let scaled = l.coords().map(|c| f.mul(s, c));
        prop_assert_eq!(canonicalize(f, scaled).unwrap(), l);
    }

    #[test]
    fn meeting_is_symmetric_and_means_a_shared_point(
        q in small_order(),
        a in 0.0f64..1.0,
        b in 0.0f64..1.0,
    ) {
        let t = LineTable::for_order(q).unwrap();
        let f = t.field();
        let n = t.len() as f64;
        let l = t.line((a * n) as LineId);
        let m = t.line((b * n) as LineId);
        prop_assert_eq!(meets(f, &l, &m), meets(f, &m, &l));
        let pl = points_on(f, &l);
        let pm = points_on(f, &m);
        let shared = pl.iter().filter(|p| pm.contains(p)).count();
        prop_assert_eq!(meets(f, &l, &m), shared > 0);
        if l != m {
            prop_assert!(shared <= 1);
        }
    }

    #[test]
    fn raw_tuples_canonicalize_like_labels(q in order(), frac in 0.0f64..1.0, s in 1u32..256) {
        // negative entries read as additive inverses
        let t = LineTable::for_order(q).unwrap();
        let f = t.field();
        let i = ((frac * line_count(q) as f64) as u64).min(line_count(q) - 1);
        let l = t.decode(i).unwrap();
        let s = (1 + s % (q - 1)) as u8;
        let raw = l.coords().map(|c| -(f.mul(s, f.neg(c)) as i64));
        let text = format!("({}, {}, {}, {}, {}, {})", raw[0], raw[1], raw[2], raw[3], raw[4], raw[5]);
        let parsed: RawTuple = text.parse().unwrap();
        prop_assert_eq!(pg3q::geometry::canonicalize_raw(f, &parsed).unwrap(), l);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn certificates_round_trip(
        q in small_order(),
        start in 0.0f64..1.0,
        k in 0usize..4,
        cyclic in any::<bool>(),
    ) {
        let ctx = SearchContext::new(LineTable::for_order(q).unwrap(), Execution::Sequential);
        let start = (start * ctx.table().len() as f64) as LineId;
        let scan = if cyclic { Scan::Cyclic } else { Scan::FromZero };
        let cfg = SearchConfig::new(Strategy::ALL[k])
            .with_seed(pg3q::search::trivial_seed())
            .with_scan(scan);
        let cfg = match pg3q::search::candidate_set(ctx.table(), &cfg.seed_lines, Execution::Sequential)
            .contains(&start)
        {
            true => cfg.with_start(start),
            false => cfg,
        };
        let rec = pg3q::run(&ctx, &cfg, Execution::Sequential).unwrap();
        let text = format_certificate(&rec);
        let cert = Certificate::parse(&text).unwrap();
        prop_assert!(cert.warnings().is_empty());
        prop_assert!(cert.notes.is_empty());
        let back = cert.to_record(&cert.field().unwrap()).unwrap();
        prop_assert_eq!(&back, &rec);
        prop_assert_eq!(format_certificate(&back), text);
    }
}

#[test]
fn empty_record_formats_and_parses() {
    let rec = SpreadRecord {
        q: 5,
        modulus: "prime".into(),
        seed_lines: Vec::new(),
        added: Vec::new(),
        provenance: Provenance::default(),
    };
    let text = format_certificate(&rec);
    let cert = Certificate::parse(&text).unwrap();
    assert_eq!(cert.size(), 0);
    assert_eq!(cert.to_record(&cert.field().unwrap()).unwrap(), rec);
}
