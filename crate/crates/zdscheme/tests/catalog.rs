use zdscheme::verify::{self, Options};
use zdscheme::Carrier;

#[test]
fn every_catalog_group_passes_every_suite() {
    let opts = Options::default();
    let mut failures = Vec::new();
    for spec in verify::catalog() {
        let c = Carrier::build(&spec).unwrap();
        let t = std::time::Instant::now();
        let r = verify::run(&c, &opts);
        eprintln!("{:<40} |X|={:<4} {:>8.2?} {}", r.group, r.order, t.elapsed(), if r.passed { "ok" } else { "FAIL" });
        for s in &r.suites {
            if let Some(e) = &s.error {
                failures.push(format!("{} {}: {e}", r.group, s.name));
            }
            for ch in s.checks.iter().filter(|c| !c.passed) {
                failures.push(format!("{} {}: {} {}", r.group, s.name, ch.name, ch.detail));
            }
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
