//! Inline expressions in `x`; see GRAMMAR.md for the accepted language.

use std::collections::BTreeMap;

use meval::tokenizer::Token;
use meval::{ContextProvider, Expr, FuncEvalError};
use susyqm::numerics::jacobi_sn_cn_dn;

/// Functions and their arities.
pub const FUNCTIONS: &[(&str, usize)] = &[
    ("sin", 1),
    ("cos", 1),
    ("tan", 1),
    ("cot", 1),
    ("sec", 1),
    ("cosec", 1),
    ("sinh", 1),
    ("cosh", 1),
    ("tanh", 1),
    ("coth", 1),
    ("sech", 1),
    ("cosech", 1),
    ("exp", 1),
    ("ln", 1),
    ("sqrt", 1),
    ("abs", 1),
    ("sn", 2),
    ("cn", 2),
    ("dn", 2),
];

fn call(name: &str, a: &[f64]) -> Result<f64, FuncEvalError> {
    let arity = FUNCTIONS
        .iter()
        .find(|f| f.0 == name)
        .ok_or(FuncEvalError::UnknownFunction)?
        .1;
    if a.len() != arity {
        return Err(FuncEvalError::NumberArgs(arity));
    }
    let x = a[0];
    let jacobi = |k: usize| {
        jacobi_sn_cn_dn(x, a[1]).map_or(f64::NAN, |t| [t.0, t.1, t.2][k])
    };
    Ok(match name {
        "sin" => x.sin(),
        "cos" => x.cos(),
        "tan" => x.tan(),
        "cot" => 1.0 / x.tan(),
        "sec" => 1.0 / x.cos(),
        "cosec" => 1.0 / x.sin(),
        "sinh" => x.sinh(),
        "cosh" => x.cosh(),
        "tanh" => x.tanh(),
        "coth" => 1.0 / x.tanh(),
        "sech" => 1.0 / x.cosh(),
        "cosech" => 1.0 / x.sinh(),
        "exp" => x.exp(),
        "ln" => x.ln(),
        "sqrt" => x.sqrt(),
        "abs" => x.abs(),
        "sn" => jacobi(0),
        "cn" => jacobi(1),
        _ => jacobi(2),
    })
}

struct Env<'a> {
    x: Option<f64>,
    vars: &'a [(String, f64)],
}

impl ContextProvider for Env<'_> {
    fn get_var(&self, name: &str) -> Option<f64> {
        match name {
            "x" => self.x,
            "pi" => Some(std::f64::consts::PI),
            "e" => Some(std::f64::consts::E),
            _ => self.vars.iter().find(|v| v.0 == name).map(|v| v.1),
        }
    }

    fn eval_func(&self, name: &str, args: &[f64]) -> Result<f64, FuncEvalError> {
        call(name, args)
    }
}

/// A parsed expression with its named parameters bound.
#[derive(Debug, Clone)]
pub struct Expression {
    expr: Expr,
    vars: Vec<(String, f64)>,
}

impl Expression {
    /// Parses `src` and checks every name against `x`, `pi`, `e`, the
    /// function table and `params`.
    pub fn parse(src: &str, params: &BTreeMap<String, f64>, allow_x: bool) -> Result<Self, String> {
        let expr: Expr = src.parse().map_err(|e| format!("cannot parse '{src}': {e}"))?;
        for t in expr.iter() {
            match t {
                Token::Var(n) => {
                    let known = (allow_x && n == "x")
                        || n == "pi"
                        || n == "e"
                        || params.contains_key(n);
                    if !known {
                        return Err(format!("unknown name '{n}' in '{src}'"));
                    }
                }
                Token::Func(n, k) => match FUNCTIONS.iter().find(|f| f.0 == n) {
                    None => return Err(format!("unknown function '{n}' in '{src}'")),
                    Some(f) if *k != Some(f.1) => {
                        return Err(format!("'{n}' takes {} argument(s) in '{src}'", f.1))
                    }
                    _ => {}
                },
                _ => {}
            }
        }
        Ok(Self {
            expr,
            vars: params.iter().map(|(k, v)| (k.clone(), *v)).collect(),
        })
    }

    /// Value at `x`; NaN where the expression is undefined.
    pub fn eval(&self, x: f64) -> f64 {
        let env = Env {
            x: Some(x),
            vars: &self.vars,
        };
        self.expr.eval_with_context(env).unwrap_or(f64::NAN)
    }
}

/// A constant expression such as `pi/2`.
pub fn constant(src: &str) -> Result<f64, String> {
    let e = Expression::parse(src, &BTreeMap::new(), false)?;
    let v = e
        .expr
        .eval_with_context(Env { x: None, vars: &[] })
        .map_err(|err| format!("cannot evaluate '{src}': {err}"))?;
    if v.is_nan() {
        return Err(format!("'{src}' is not a number"));
    }
    Ok(v)
}

/// `K=V,K=V` with constant-expression values.
pub fn param_list(src: &str) -> Result<BTreeMap<String, f64>, String> {
    let mut out = BTreeMap::new();
    for item in src.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| format!("expected NAME=VALUE, got '{item}'"))?;
        out.insert(k.trim().to_string(), constant(v.trim())?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluates_grammar() {
        let p = BTreeMap::from([("B".to_string(), 2.0)]);
        let e = Expression::parse("B*tanh(x) - sech(x)^2 + 2^3", &p, true).unwrap();
        let x: f64 = 0.4;
        let want = 2.0 * x.tanh() - 1.0 / x.cosh().powi(2) + 8.0;
        assert!((e.eval(x) - want).abs() < 1e-14);
        let j = Expression::parse("sn(x, 0.5)^2 + cn(x, 0.5)^2", &p, true).unwrap();
        assert!((j.eval(1.3) - 1.0).abs() < 1e-12);
        let u = Expression::parse("-cot(x)", &p, true).unwrap();
        assert!((u.eval(1.0) + 1.0 / 1.0f64.tan()).abs() < 1e-15);
    }

    #[test]
    fn rejects_unknown_names() {
        let p = BTreeMap::new();
        assert!(Expression::parse("y + 1", &p, true).is_err());
        assert!(Expression::parse("foo(x)", &p, true).is_err());
        assert!(Expression::parse("sn(x)", &p, true).is_err());
        assert!(Expression::parse("x +", &p, true).is_err());
        assert!(constant("x").is_err());
    }

    #[test]
    fn params_and_constants() {
        let m = param_list("L=pi, A = 2*3 ,B=-1").unwrap();
        assert_eq!(m["A"], 6.0);
        assert_eq!(m["B"], -1.0);
        assert!((m["L"] - std::f64::consts::PI).abs() < 1e-15);
        assert_eq!(constant("-2^2").unwrap(), -4.0);
        assert_eq!(constant("2^3^2").unwrap(), 512.0);
        assert_eq!(constant("7 % 4").unwrap(), 3.0);
        assert!(param_list("L").is_err());
    }
}
