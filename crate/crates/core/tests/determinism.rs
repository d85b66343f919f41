//! Results must not depend on the size of the rayon pool.

use loopcheck::corpus;
use loopcheck::properties::Method;
use loopcheck::search::{enumerate_loops, search, Mode, SearchOutcome, SearchQuery};
use loopcheck::theoremlab::{claims, run_catalog, ClaimReport};

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(f)
}

fn tables(o: &SearchOutcome) -> (Vec<Vec<Vec<usize>>>, u64, bool) {
    (o.hits.iter().map(|h| h.table.rows()).collect(), o.examined, o.exhausted)
}

fn query(order: usize, require: &[&str], forbid: &[&str], limit: Option<usize>, mode: Mode) -> SearchQuery {
    SearchQuery {
        require: require.iter().map(|s| s.to_string()).collect(),
        forbid: forbid.iter().map(|s| s.to_string()).collect(),
        limit,
        mode,
        seed: 11,
        ..SearchQuery::new(order)
    }
}

#[test]
fn search_is_pool_independent() {
    let queries = [
        query(6, &["cc"], &["associative"], None, Mode::Exhaustive),
        query(6, &["osborn"], &["associative"], Some(7), Mode::Exhaustive),
        query(5, &[], &["power-associative"], Some(5), Mode::Exhaustive),
        query(9, &[], &["osborn"], Some(3), Mode::First),
    ];
    for q in &queries {
        let one = in_pool(1, || search(q).unwrap());
        let eight = in_pool(8, || search(q).unwrap());
        assert_eq!(tables(&one), tables(&eight), "{q:?}");
    }
}

#[test]
fn catalog_is_pool_independent() {
    let mut corpus: Vec<_> = enumerate_loops(5)
        .unwrap()
        .enumerate()
        .map(|(i, l)| (format!("R5-{i}"), l))
        .collect();
    corpus.extend(corpus::groups().into_iter().filter(|(_, g)| g.order() <= 8));
    corpus.push(("M12".into(), corpus::moufang12()));
    let run = |t| -> Vec<ClaimReport> { in_pool(t, || run_catalog(claims(), &corpus, Method::Identity).unwrap()) };
    assert_eq!(run(1), run(8));
}
