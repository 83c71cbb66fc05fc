use std::env;
use std::path::PathBuf;

fn main() {
    let dir = env::var("CARGO_MANIFEST_DIR").expect("CARGO_MANIFEST_DIR");
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
    let config = cbindgen::Config::from_file(PathBuf::from(&dir).join("cbindgen.toml")).unwrap_or_default();
    match cbindgen::Builder::new().with_crate(&dir).with_config(config).generate() {
        Ok(bindings) => {
            bindings.write_to_file(PathBuf::from(&dir).join("include/semigraphoid.h"));
        }
        Err(e) => println!("cargo:warning=header not regenerated: {e}"),
    }
}
