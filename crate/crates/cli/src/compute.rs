use std::fmt::Write as _;

use truncpath_core::fox::homology_model;
use truncpath_core::hopf::{kappa_of_primitives, primitive_part};
use truncpath_core::oracle::{RelChainComplex, Variant};
use truncpath_core::ring::build_ring;
use truncpath_core::{Error, Result};

use crate::checks::Input;

pub fn ring(input: &Input, degrees: &[usize]) -> Result<String> {
    let mut out = String::new();
    for &n in degrees {
        let ring = build_ring(&input.gp, n)?;
        let _ = writeln!(
            out,
            "n={n}  words {}  ideal rank {}  quotient {}",
            ring.dim(),
            ring.ideal().rank(),
            ring.additive_group().invariants()
        );
    }
    Ok(out)
}

/// `A_k = I^k/I^{k+1}` for `k = 1..=n`, from the ring at the top degree.
pub fn graded(input: &Input, n: usize) -> Result<String> {
    let ring = build_ring(&input.gp, n)?;
    let mut out = String::new();
    for k in 1..=n {
        let _ = writeln!(out, "A_{k} = {}", ring.graded_piece(k)?.invariants());
    }
    Ok(out)
}

pub fn primitives(input: &Input, degrees: &[usize]) -> Result<String> {
    if !input.bp.is_loop() {
        return Err(Error::EndpointMismatch("primitives need a = b".into()));
    }
    let mut out = String::new();
    for &n in degrees {
        let ring = build_ring(&input.gp, n)?;
        let basis = primitive_part(&ring)?.basis(&ring);
        let image = kappa_of_primitives(&ring, &homology_model(&input.gp, n)?)?;
        let _ = writeln!(out, "n={n}  rank {}  image in H_n {}", basis.len(), image.as_group().invariants());
        for p in &basis {
            let _ = writeln!(out, "  {p}");
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Fox,
    Oracle,
}

pub fn homology(input: &Input, degrees: &[usize], method: Method) -> Result<String> {
    let mut out = String::new();
    for &n in degrees {
        match method {
            Method::Fox => {
                let _ = writeln!(out, "n={n}  H_n = {}", homology_model(&input.gp, n)?.group().invariants());
            }
            Method::Oracle => {
                let cx = RelChainComplex::build(&input.ss, n, Variant::Both, input.bp.a, input.bp.b, input.cap)?;
                let groups: Vec<String> = (0..=n).map(|k| format!("H_{k} = {}", cx.homology(k))).collect();
                let _ = writeln!(out, "n={n}  cells {:?}  {}", cx.ranks(), groups.join("  "));
            }
        }
    }
    Ok(out)
}
