use super::{Problem, ProblemError, ProblemFamily};
use crate::exprparse::parse;
use crate::scalar::Scalar;

/// Names accepted by [`catalog`].
pub const CATALOG: [&str; 2] = ["example_4_1", "example_4_2"];

struct Entry {
    p: &'static str,
    f: &'static str,
    exact: &'static str,
}

fn entry(name: &str) -> Option<Entry> {
    match name {
        // -eps y'' + y = -cos^2(pi x) - 2 eps pi^2 cos(2 pi x), twin boundary layers.
        "example_4_1" => Some(Entry {
            p: "1",
            f: "-cos(pi*x)^2 - 2*eps*pi^2*cos(2*pi*x)",
            exact: "(exp(-(1 - x)/sqrt(eps)) + exp(-x/sqrt(eps))) / (1 + exp(-1/sqrt(eps))) \
                    - cos(pi*x)^2",
        }),
        // -eps y'' + (1 + x) y = -40 (x (x^2 - 1) - 2 eps), quadratic solution.
        "example_4_2" => Some(Entry {
            p: "1 + x",
            f: "-40*(x*(x^2 - 1) - 2*eps)",
            exact: "40*x*(1 - x)",
        }),
        _ => None,
    }
}

pub(super) fn family(name: &str) -> Result<ProblemFamily, ProblemError> {
    let e = entry(name).ok_or_else(|| ProblemError::UnknownProblem(name.to_string()))?;
    let expr = |s: &str| parse(s).expect("catalog expressions are valid");
    Ok(ProblemFamily {
        name: name.to_string(),
        p: expr(e.p),
        f: expr(e.f),
        exact: Some(expr(e.exact)),
        a: 0.0,
        b: 1.0,
        ya: 0.0,
        yb: 0.0,
        default_eps: None,
    })
}

/// Built-in benchmark problem on [0, 1] with homogeneous boundary values.
pub fn catalog<T: Scalar>(name: &str, epsilon: T) -> Result<Problem<T>, ProblemError> {
    family(name)?.instantiate(epsilon)
}
