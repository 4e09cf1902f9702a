//! Define a basis in catalog JSON, build it, and estimate a constant —
//! the same path the CLI takes for `--catalog` files.
//!
//! ```bash
//! cargo run --example custom_catalog
//! ```

use greedylab::catalog::parse_catalog;
use greedylab::estimator::{estimate_gamma, SearchOpts};
use greedylab::grid::GridSpec;

const CATALOG: &str = r#"[
  {
    "id": "summing-7",
    "description": "the built-in summing family, one dimension further",
    "dim": 7,
    "p": 1.0,
    "norm": { "family": "lp", "q": "inf" },
    "basis": { "constructor": "summing" }
  },
  {
    "id": "skewed-2",
    "description": "a custom two-vector basis given by exact rational rows",
    "dim": 2,
    "p": 0.5,
    "norm": { "family": "lp", "q": 0.5 },
    "basis": { "constructor": "custom",
               "matrix": [["1", "0"], ["1/2", "1"]] }
  }
]"#;

fn main() {
    let entries = parse_catalog(CATALOG, "inline").unwrap();
    let grid = GridSpec::new(1).unwrap();
    let opts = SearchOpts::default();

    for entry in &entries {
        let basis = entry.build().unwrap();
        let est = estimate_gamma(&basis, &grid, &opts).unwrap();
        println!(
            "{:<12} dim={} p={} norm={}  gamma = {}  (mode: {:?})",
            entry.id,
            entry.dim,
            entry.p,
            entry.norm_label(),
            est.value,
            est.mode
        );
    }
}
