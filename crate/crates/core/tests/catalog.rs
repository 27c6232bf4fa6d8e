use cftorsion::catalog::{read_catalog, record_curve, Catalog, CurveRecord, RecordKind};
use cftorsion::search::{run_search, SearchConfig};
use cftorsion::Error;
use std::sync::Arc;

fn records() -> Vec<CurveRecord> {
    let mut cfg = SearchConfig::new(2, 11);
    cfg.partition = Some(vec![2, 1, 1, 1, 1, 2]);
    cfg.samples = 1;
    run_search(&cfg).unwrap()
}

fn concrete() -> CurveRecord {
    records().into_iter().find(|r| r.kind == RecordKind::Concrete).unwrap()
}

#[test]
fn lines_round_trip() {
    for r in records() {
        assert_eq!(CurveRecord::from_line(&r.to_line()).unwrap(), r);
    }
}

#[test]
fn append_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.jsonl");
    let rec = concrete();
    assert!(rec.verified);
    assert_eq!(record_curve(&rec, &path), Ok(true));
    assert_eq!(record_curve(&rec, &path), Ok(false));
    let mut later = rec.clone();
    later.created = later.created + chrono::Duration::seconds(5);
    assert_eq!(record_curve(&later, &path), Ok(false));
    assert_eq!(read_catalog(&path).unwrap(), vec![rec]);
}

#[test]
fn unverified_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let mut rec = concrete();
    rec.verification.check("torsion order", false, "N = 10");
    rec.verified = rec.verification.all_passed();
    assert_eq!(record_curve(&rec, dir.path().join("c.jsonl")), Err(Error::UnverifiedRecord));
}

#[test]
fn reopen_keeps_dedup() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.jsonl");
    let rec = concrete();
    assert_eq!(Catalog::open(&path).unwrap().append(&rec), Ok(true));
    assert_eq!(Catalog::open(&path).unwrap().append(&rec), Ok(false));
}

#[test]
fn concurrent_appends() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.jsonl");
    let base = concrete();
    let cat = Arc::new(Catalog::open(&path).unwrap());
    let workers: Vec<_> = (0..4)
        .map(|w| {
            let cat = cat.clone();
            let base = base.clone();
            std::thread::spawn(move || {
                for i in 0..25 {
                    let mut r = base.clone();
                    r.note = Some(format!("worker {w} item {i}"));
                    assert_eq!(cat.append(&r), Ok(true));
                }
            })
        })
        .collect();
    for w in workers {
        w.join().unwrap();
    }
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 100);
    let back = read_catalog(&path).unwrap();
    assert_eq!(back.len(), 100);
    assert!(back.iter().all(|r| r.verified));
}
