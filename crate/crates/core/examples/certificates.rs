//! JSON certificates: generate, re-verify, and catch a tampered field.

use tameforge::cli::{differences, generate_document, main_with, recompute, render_document};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let doc = generate_document(1, 1)?;
    let text = render_document(&doc);
    println!(
        "certificate for (1, 1): {} bytes, overall {}",
        text.len(),
        doc["overall"]
    );
    println!("H' images: {}", doc["automorphism"]["images"]);

    let fresh = recompute("generate", &doc["inputs"])?;
    println!(
        "recomputation identical: {}",
        render_document(&fresh) == text
    );

    let mut tampered = doc.clone();
    tampered["witness"]["alpha"] = "2".into();
    println!("tampered fields: {:?}", differences(&tampered, &fresh, 5));

    let dir = std::env::temp_dir().join(format!("tameforge-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("nagata.json");
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = main_with(
        ["tameforge", "inspect", "nagata", "--json"],
        &mut out,
        &mut err,
    );
    std::fs::write(&path, &out)?;
    println!("inspect nagata exit {code}");
    let mut report = Vec::new();
    let code = main_with(
        [
            "tameforge",
            "verify",
            path.to_str().expect("utf-8 temp path"),
        ],
        &mut report,
        &mut err,
    );
    print!("{}", String::from_utf8_lossy(&report));
    println!("verify exit {code}");
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
