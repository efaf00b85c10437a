//! Browser bindings: series expansion, mock theta coefficients and the
//! Borcherds product fit, each returning plain text for the demo page.

use mockjac::borcherds::{borcherds_case, check_discriminant};
use mockjac::catalog::lookup;
use mockjac::mocktheta::eulerian;
use mockjac::series::fmt_exp;
use mockjac::{eta_expand, EtaQuotient, QSeries};
use wasm_bindgen::prelude::*;

/// Largest order accepted from the page, to keep it responsive.
const MAX_ORDER: i64 = 400;

fn lines(s: &QSeries) -> String {
    s.terms()
        .map(|(x, c)| format!("{} {c}\n", fmt_exp(x)))
        .collect()
}

fn check_order(order: i64) -> Result<(), String> {
    if (0..=MAX_ORDER).contains(&order) {
        Ok(())
    } else {
        Err(format!("order must lie in 0..={MAX_ORDER}"))
    }
}

/// Expands an eta quotient such as `1^24/2^24`, or a lambency's principal
/// modulus when `input` names one.
#[wasm_bindgen]
pub fn expand_eta(input: &str, order: i64) -> Result<String, String> {
    check_order(order)?;
    let e = match lookup(input.trim()) {
        Ok(l) => l.eta.clone(),
        Err(_) => input.parse::<EtaQuotient>().map_err(|e| e.to_string())?,
    };
    Ok(lines(&eta_expand(&e, order)))
}

/// Coefficients of a named Eulerian series such as `3:psi`.
#[wasm_bindgen]
pub fn expand_eulerian(name: &str, order: i64) -> Result<String, String> {
    check_order(order)?;
    eulerian(name.trim(), order)
        .map(|s| lines(&s))
        .map_err(|e| e.to_string())
}

/// Fits `Ψ_{D,r}` for a lambency with a printed table.
#[wasm_bindgen]
pub fn fit_product(lambency: &str, d: i64, r: i64) -> Result<String, String> {
    let l = lookup(lambency.trim()).map_err(|e| e.to_string())?;
    check_discriminant(l.m, d).map_err(|e| e.to_string())?;
    let t = l
        .fixture
        .as_ref()
        .ok_or_else(|| format!("no printed table for {}", l.symbol))?;
    let c = borcherds_case(l, t, d, r, None).map_err(|e| e.to_string())?;
    let join = |v: &[mockjac::CycNum]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
    Ok(format!(
        "degree {} (bound {}) over {}\nP = [{}]\nQ = [{}]\nknown through q^{}, {} coefficients checked beyond the solve\n",
        c.fit.degree,
        c.degree_bound,
        c.fit.field,
        join(&c.fit.p),
        join(&c.fit.q),
        c.window - 1,
        c.fit.surplus
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bindings() {
        assert!(expand_eta("1^24/2^24", 2).unwrap().starts_with("-1 1\n0 -24\n1 276\n"));
        assert_eq!(expand_eta("2", 0).unwrap(), "-1 1\n");
        assert!(expand_eta("1^x", 3).is_err());
        assert!(expand_eta("1", 10_000).is_err());
        assert_eq!(expand_eulerian("3:psi", 5).unwrap(), "1 1\n2 1\n3 1\n4 2\n");
        assert!(expand_eulerian("nope", 5).is_err());
        assert!(fit_product("10+2", -4, 6).unwrap().starts_with("degree 1 (bound 1) over Q(z4)"));
        assert!(fit_product("7", -3, 1).unwrap_err().contains("excluded"));
        assert!(fit_product("2", -7, 1).is_err());
    }
}
