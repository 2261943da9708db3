use std::path::PathBuf;

use rrmo_core::ExperimentConfig;

#[test]
fn shipped_configs_load_and_validate() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut seen = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "json") {
            let config = ExperimentConfig::load(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            config.validate().unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            let again = ExperimentConfig::from_json(&config.to_json()).unwrap();
            assert_eq!(again, config, "{}", path.display());
            seen += 1;
        }
    }
    assert!(seen >= 5);
}
