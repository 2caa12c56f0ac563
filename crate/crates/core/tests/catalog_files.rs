use std::fs;
use std::path::PathBuf;

use twogroup::catalog;

fn catalog_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../catalog")
}

/// Set `UPDATE_CATALOG=1` to rewrite the checked-in files.
#[test]
fn checked_in_catalog_is_current() {
    let dir = catalog_dir();
    let files = catalog::files();
    if std::env::var_os("UPDATE_CATALOG").is_some() {
        fs::create_dir_all(&dir).unwrap();
        for (name, body) in &files {
            fs::write(dir.join(name), body).unwrap();
        }
    }
    for (name, body) in &files {
        let on_disk = fs::read_to_string(dir.join(name))
            .unwrap_or_else(|_| panic!("catalog/{name} is missing"));
        assert_eq!(&on_disk, body, "catalog/{name} is stale");
    }
    let mut listed: Vec<String> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(".json"))
        .collect();
    listed.sort();
    let expected: Vec<String> = files.into_iter().map(|(n, _)| n).collect();
    assert_eq!(listed, expected);
}
