use std::path::PathBuf;
use std::process::{Command, Output};

use hcpca_core::drift::certificate::fixtures;

fn hcpca(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hcpca")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("hcpca-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn data_rows(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn simulate_is_deterministic_with_one_row_per_step() {
    let args = ["simulate", "--width", "256", "--steps", "50", "--seed", "4"];
    let a = hcpca(&args);
    let b = hcpca(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    // Header line plus steps + 1 rows.
    assert_eq!(data_rows(&stdout(&a)).len(), 52);
}

#[test]
fn excess_noise_mass_is_a_config_error() {
    let o = hcpca(&["simulate", "--eps0", "0.7", "--eps1", "0.7", "--steps", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_config_key_is_rejected() {
    let d = scratch("badkey");
    let p = d.join("c.json");
    std::fs::write(&p, r#"{"bogus": 1}"#).unwrap();
    let o = hcpca(&["simulate", "--config", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file_overrides_flags() {
    let d = scratch("override");
    let p = d.join("c.json");
    std::fs::write(&p, r#"{"steps": 7, "width": 128}"#).unwrap();
    let o = hcpca(&["simulate", "--steps", "50", "--config", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("\"steps\":7"), "{out}");
    assert_eq!(data_rows(&out).len(), 9);
}

#[test]
fn verify_passes_on_shipped_fixtures() {
    let o = hcpca(&["verify", "--grid-step", "1/10"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn raised_floor_fails_verification() {
    let d = scratch("flip");
    let (name, text) = fixtures()[0];
    let floor = text.lines().find(|l| l.starts_with("floor ")).unwrap();
    let value = floor.trim_start_matches("floor ").trim();
    let flipped = value.strip_prefix('-').map(str::to_string).unwrap_or(format!("-{value}"));
    let bad = text.replacen(floor, &format!("floor {flipped}"), 1);
    let p = d.join(format!("{name}.cert"));
    std::fs::write(&p, bad).unwrap();
    let o = hcpca(&["verify", "--grid-step", "1/10", "--fixtures", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
}

#[test]
fn noise_free_game_always_draws() {
    let o = hcpca(&["game", "--eps0", "0", "--eps1", "0", "--width", "64", "--heights", "5", "--trials", "20"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let row = data_rows(&out).into_iter().find(|l| l.starts_with("5,")).expect("height row");
    let est: f64 = row.split(',').nth(2).unwrap().parse().unwrap();
    assert_eq!(est, 1.0, "{out}");
}

#[test]
fn noise_free_islands_have_zero_drift() {
    let o = hcpca(&["islands", "--eps0", "0", "--eps1", "0", "--records", "2000"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
