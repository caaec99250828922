use proptest::prelude::*;
use rankcode::codefile::CodeFile;
use rankcode_core::gf::make_field;
use rankcode_core::{MatFq, RankCode};
use serde_json::Map;

const FIELDS: [(u32, u32); 4] = [(2, 1), (3, 1), (2, 2), (3, 2)];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn write_then_read_is_exact(
        idx in 0..FIELDS.len(),
        m in 1usize..4,
        n in 1usize..4,
        seeds in proptest::collection::vec(any::<u32>(), 1..40),
        linear in any::<bool>(),
    ) {
        let f = make_field(FIELDS[idx].0, FIELDS[idx].1, None).unwrap();
        let q = f.order();
        let mut mats: Vec<MatFq> = seeds
            .chunks(m * n)
            .filter(|c| c.len() == m * n)
            .map(|c| MatFq::from_codes(&f, m, n, c.iter().map(|v| v % q).collect()).unwrap())
            .collect();
        mats.sort_by(|a, b| a.data().cmp(b.data()));
        mats.dedup();
        prop_assume!(!mats.is_empty());
        let code = if linear {
            RankCode::from_span(&f, m, n, mats).unwrap()
        } else {
            RankCode::explicit(&f, m, n, mats).unwrap()
        };
        let text = CodeFile::from_code(&code, Map::new()).to_json_string();
        let back = CodeFile::parse(&text).unwrap().to_code().unwrap();
        prop_assert_eq!(back.matrices(), code.matrices());
        prop_assert_eq!(back.is_linear(), code.is_linear());
        prop_assert_eq!(CodeFile::from_code(&back, Map::new()).to_json_string(), text);
    }
}
