//! Parser properties: print/parse round-trip and agreement with an
//! independent shunting-yard evaluator on random source strings.

use proptest::prelude::*;
use tension_bvp::exprparse::{parse, BinOp, Constant, Expr, Func, Var};

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0u32..20).prop_map(|v| Expr::Num(v as f64)),
        (0.0f64..50.0).prop_map(Expr::Num),
        Just(Expr::Var(Var::X)),
        Just(Expr::Var(Var::Eps)),
        Just(Expr::Const(Constant::Pi)),
        Just(Expr::Const(Constant::E)),
    ]
}

fn ast() -> impl Strategy<Value = Expr> {
    let ops = prop_oneof![
        Just(BinOp::Add),
        Just(BinOp::Sub),
        Just(BinOp::Mul),
        Just(BinOp::Div),
        Just(BinOp::Pow)
    ];
    let funcs = proptest::sample::select(Func::ALL.to_vec());
    leaf().prop_recursive(4, 24, 2, move |inner| {
        prop_oneof![
            inner.clone().prop_map(Expr::negate),
            (ops.clone(), inner.clone(), inner.clone()).prop_map(|(op, l, r)| Expr::binary(op, l, r)),
            (funcs.clone(), inner).prop_map(|(f, a)| Expr::call(f, a)),
        ]
    })
}

/// Source text with minimal parentheses, so precedence does the work.
fn source() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        Just("2".to_string()),
        Just("3".to_string()),
        Just("0.5".to_string()),
        Just("1e-1".to_string()),
        Just("x".to_string()),
        Just("eps".to_string()),
        Just("pi".to_string()),
        Just("e".to_string()),
    ];
    let funcs: Vec<&'static str> = Func::ALL.iter().map(|f| f.name()).collect();
    let funcs = proptest::sample::select(funcs);
    let ops = proptest::sample::select(vec!["+", "-", "*", "/", "^", " + ", " * ", " ^ "]);
    leaf.prop_recursive(4, 24, 2, move |inner| {
        prop_oneof![
            (inner.clone(), ops.clone(), inner.clone()).prop_map(|(a, op, b)| format!("{a}{op}{b}")),
            inner.clone().prop_map(|a| format!("-{a}")),
            inner.clone().prop_map(|a| format!("({a})")),
            (funcs.clone(), inner).prop_map(|(f, a)| format!("{f}({a})")),
        ]
    })
}

// ---- reference evaluator -------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum RTok {
    Num(f64),
    Name(String),
    Op(char),
    Neg,
    LParen,
    RParen,
}

fn rtokens(src: &str) -> Vec<RTok> {
    let chars: Vec<char> = src.chars().collect();
    let mut out: Vec<RTok> = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i + 1 < chars.len() && chars[i] == 'e' && (chars[i + 1].is_ascii_digit() || chars[i + 1] == '-') {
                i += 2;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let text: String = chars[start..i].iter().collect();
            out.push(RTok::Num(text.parse().unwrap()));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(RTok::Name(chars[start..i].iter().collect()));
        } else if c == '(' {
            out.push(RTok::LParen);
            i += 1;
        } else if c == ')' {
            out.push(RTok::RParen);
            i += 1;
        } else {
            let unary = c == '-'
                && matches!(
                    out.last(),
                    None | Some(RTok::Op(_)) | Some(RTok::Neg) | Some(RTok::LParen)
                );
            out.push(if unary { RTok::Neg } else { RTok::Op(c) });
            i += 1;
        }
    }
    out
}

fn prec(t: &RTok) -> (u8, bool) {
    // (precedence, right associative)
    match t {
        RTok::Op('+') | RTok::Op('-') => (1, false),
        RTok::Op('*') | RTok::Op('/') => (2, false),
        RTok::Neg => (3, true),
        RTok::Op('^') => (4, true),
        _ => (0, false),
    }
}

fn rpow(a: f64, b: f64) -> Option<f64> {
    if b.fract() == 0.0 && b.abs() <= 64.0 {
        let mut acc = 1.0;
        for _ in 0..(b.abs() as i32) {
            acc *= a;
        }
        return if b < 0.0 {
            if acc == 0.0 {
                None
            } else {
                Some(1.0 / acc)
            }
        } else {
            Some(acc)
        };
    }
    if b.fract() != 0.0 && a < 0.0 {
        return None;
    }
    if a == 0.0 && b < 0.0 {
        return None;
    }
    if a == 0.0 {
        return Some(0.0);
    }
    Some(a.powf(b))
}

fn apply(op: &RTok, stack: &mut Vec<f64>) -> Option<()> {
    let v = match op {
        RTok::Neg => -stack.pop()?,
        RTok::Op(c) => {
            let b = stack.pop()?;
            let a = stack.pop()?;
            match c {
                '+' => a + b,
                '-' => a - b,
                '*' => a * b,
                '/' => {
                    if b == 0.0 {
                        return None;
                    }
                    a / b
                }
                '^' => rpow(a, b)?,
                _ => unreachable!(),
            }
        }
        RTok::Name(f) => {
            let a = stack.pop()?;
            match f.as_str() {
                "sin" => a.sin(),
                "cos" => a.cos(),
                "tan" => a.tan(),
                "sinh" => a.sinh(),
                "cosh" => a.cosh(),
                "tanh" => a.tanh(),
                "exp" => a.exp(),
                "log" if a > 0.0 => a.ln(),
                "sqrt" if a >= 0.0 => a.sqrt(),
                "abs" => a.abs(),
                _ => return None,
            }
        }
        _ => unreachable!(),
    };
    if !v.is_finite() {
        return None;
    }
    stack.push(v);
    Some(())
}

/// Shunting-yard evaluation; `None` for any non-finite or undefined step.
fn reference_eval(src: &str, x: f64, eps: f64) -> Option<f64> {
    let mut values: Vec<f64> = Vec::new();
    let mut ops: Vec<RTok> = Vec::new();
    for tok in rtokens(src) {
        match tok {
            RTok::Num(v) => values.push(v),
            RTok::Name(ref n) => match n.as_str() {
                "x" => values.push(x),
                "eps" => values.push(eps),
                "pi" => values.push(std::f64::consts::PI),
                "e" => values.push(std::f64::consts::E),
                _ => ops.push(tok),
            },
            RTok::LParen => ops.push(tok),
            RTok::RParen => {
                while let Some(top) = ops.pop() {
                    if top == RTok::LParen {
                        break;
                    }
                    apply(&top, &mut values)?;
                }
                if matches!(ops.last(), Some(RTok::Name(_))) {
                    let f = ops.pop().unwrap();
                    apply(&f, &mut values)?;
                }
            }
            RTok::Neg => ops.push(tok),
            RTok::Op(_) => {
                let (p, right) = prec(&tok);
                while let Some(top) = ops.last() {
                    if matches!(top, RTok::LParen | RTok::Name(_)) {
                        break;
                    }
                    let (tp, _) = prec(top);
                    if tp > p || (tp == p && !right) {
                        let top = ops.pop().unwrap();
                        apply(&top, &mut values)?;
                    } else {
                        break;
                    }
                }
                ops.push(tok);
            }
        }
    }
    while let Some(top) = ops.pop() {
        apply(&top, &mut values)?;
    }
    (values.len() == 1).then(|| values[0])
}

#[test]
fn reference_evaluator_sanity() {
    assert_eq!(reference_eval("-2^2", 0.0, 0.0), Some(-4.0));
    assert_eq!(reference_eval("2^3^2", 0.0, 0.0), Some(512.0));
    assert_eq!(reference_eval("-2*3", 0.0, 0.0), Some(-6.0));
    assert_eq!(reference_eval("2^-1*4", 0.0, 0.0), Some(2.0));
    assert_eq!(reference_eval("10-4-3", 0.0, 0.0), Some(3.0));
    assert_eq!(reference_eval("cos(pi*x)^2", 1.0, 0.0), Some(1.0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_then_parse_evaluates_identically(
        e in ast(),
        points in proptest::collection::vec((-3.0f64..3.0, 1e-6f64..1.0), 100),
    ) {
        let printed = e.to_string();
        let back = parse(&printed).map_err(|err| TestCaseError::fail(format!("{printed}: {err}")))?;
        for (x, eps) in points {
            match (e.evaluate(x, eps), back.evaluate(x, eps)) {
                (Ok(a), Ok(b)) => prop_assert_eq!(a.to_bits(), b.to_bits(), "{} at x={}", printed, x),
                (Err(_), Err(_)) => {}
                (a, b) => prop_assert!(false, "{printed}: {a:?} vs {b:?}"),
            }
        }
    }

    #[test]
    fn agrees_with_shunting_yard(src in source(), x in -2.0f64..2.0, eps in 1e-3f64..1.0) {
        let ours = parse(&src)
            .map_err(|err| TestCaseError::fail(format!("{src}: {err}")))?
            .evaluate(x, eps)
            .ok();
        let reference = reference_eval(&src, x, eps);
        match (ours, reference) {
            (Some(a), Some(b)) => {
                let scale = a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
                prop_assert!((a - b).abs() <= 1e-14 * scale, "{src}: {a} vs {b}");
            }
            (None, None) => {}
            (a, b) => prop_assert!(false, "{src}: {a:?} vs {b:?}"),
        }
    }

    #[test]
    fn evaluation_is_deterministic(e in ast(), x in -3.0f64..3.0, eps in 1e-6f64..1.0) {
        let a = e.evaluate(x, eps).map(f64::to_bits);
        let b = e.evaluate(x, eps).map(f64::to_bits);
        prop_assert_eq!(a, b);
    }
}
