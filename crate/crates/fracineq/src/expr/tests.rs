use super::parse::ParseError;
use super::*;
use crate::rng::SplitMix64;
use proptest::prelude::*;

fn parse(text: &str) -> FunctionSpec {
    FunctionSpec::parse(text).unwrap()
}

#[test]
fn grammar_smoke_cases() {
    use Ast::*;
    assert_eq!(parse("x^2").ast, Pow(Box::new(Var), 2.0));
    assert_eq!(
        parse("4*x - x^2").ast,
        Sub(
            Box::new(Mul(Box::new(Const(4.0)), Box::new(Var))),
            Box::new(Pow(Box::new(Var), 2.0)),
        )
    );
    assert_eq!(
        parse("exp(2*x)/(1+x)").ast,
        Div(
            Box::new(Exp(Box::new(Mul(Box::new(Const(2.0)), Box::new(Var))))),
            Box::new(Add(Box::new(Const(1.0)), Box::new(Var))),
        )
    );
}

#[test]
fn precedence_and_associativity() {
    // ^ binds tighter than unary minus, which binds tighter than *.
    assert_eq!(
        parse("-x^2").ast,
        Ast::Neg(Box::new(Ast::Pow(Box::new(Ast::Var), 2.0)))
    );
    assert_eq!(
        parse("-x*2").ast,
        Ast::Mul(Box::new(Ast::Neg(Box::new(Ast::Var))), Box::new(Ast::Const(2.0)))
    );
    // right-associative constant exponent: x^2^3 = x^8
    assert_eq!(parse("x^2^3").ast, Ast::Pow(Box::new(Ast::Var), 8.0));
    // left-associative subtraction
    assert_eq!(
        parse("1 - 2 - x").ast,
        Ast::Sub(
            Box::new(Ast::Sub(Box::new(Ast::Const(1.0)), Box::new(Ast::Const(2.0)))),
            Box::new(Ast::Var),
        )
    );
}

#[test]
fn named_constants_and_scientific_notation() {
    assert_eq!(parse("pi").ast, Ast::Const(std::f64::consts::PI));
    assert_eq!(parse("e").ast, Ast::Const(std::f64::consts::E));
    assert_eq!(parse("2e3").ast, Ast::Const(2000.0));
    assert_eq!(parse("1.5e-2").ast, Ast::Const(0.015));
    // `e` not followed by an exponent stays Euler's number
    assert_eq!(
        parse("2*e").ast,
        Ast::Mul(Box::new(Ast::Const(2.0)), Box::new(Ast::Const(std::f64::consts::E)))
    );
}

#[test]
fn constant_exponent_folding() {
    assert_eq!(parse("x^(1/2)").ast, Ast::Pow(Box::new(Ast::Var), 0.5));
    assert_eq!(parse("x^-2").ast, Ast::Pow(Box::new(Ast::Var), -2.0));
    match FunctionSpec::parse("x^x").unwrap_err() {
        ParseError::NonConstantExponent { offset } => assert_eq!(offset, 2),
        other => panic!("expected NonConstantExponent, got {other:?}"),
    }
}

/// The 10-case malformed corpus; each case pins the exact byte offset.
#[test]
fn malformed_corpus_offsets() {
    let cases: [(&str, usize); 10] = [
        ("", 0),             // empty input
        ("1 +", 3),          // dangling operator, error at EOF
        ("(x", 2),           // unclosed paren
        ("x^", 2),           // missing exponent
        ("foo(x)", 0),       // unknown identifier
        ("x 2", 2),          // adjacent operands
        ("exp", 3),          // function without argument list
        ("*x", 0),           // operator in prefix position
        ("x + $", 4),        // illegal character
        ("(x + 1", 6),       // unclosed paren at EOF
    ];
    for (text, offset) in cases {
        let err = FunctionSpec::parse(text).unwrap_err();
        assert_eq!(
            err.offset(),
            offset,
            "case `{text}` reported offset {} (error: {err})",
            err.offset()
        );
    }
}

#[test]
fn unknown_identifier_details() {
    match FunctionSpec::parse("2*sin(x)").unwrap_err() {
        ParseError::UnknownIdentifier { offset, name } => {
            assert_eq!(offset, 2);
            assert_eq!(name, "sin");
        }
        other => panic!("unexpected error {other:?}"),
    }
}

#[test]
fn syntax_error_carries_expected_set() {
    match FunctionSpec::parse("x 2").unwrap_err() {
        ParseError::Syntax { expected, found, .. } => {
            assert!(expected.contains(&"`+`"));
            assert!(expected.contains(&"end of input"));
            assert!(found.contains("number"));
        }
        other => panic!("unexpected error {other:?}"),
    }
}

#[test]
fn evaluation_oracles() {
    assert_eq!(parse("x^2").evaluate(3.0).unwrap(), 9.0);
    assert_eq!(parse("exp(x)").evaluate(0.0).unwrap(), 1.0);
    assert_eq!(parse("4*x - x^2").evaluate(1.0).unwrap(), 3.0);
    assert_eq!(parse("abs(1 - x)").evaluate(3.0).unwrap(), 2.0);
}

#[test]
fn evaluation_domain_errors() {
    match parse("ln(x)").evaluate(-1.0).unwrap_err() {
        EvalError::LnDomain { x, arg, .. } => {
            assert_eq!(x, -1.0);
            assert_eq!(arg, -1.0);
        }
        other => panic!("unexpected {other:?}"),
    }
    assert!(matches!(
        parse("1/(x - 1)").evaluate(1.0).unwrap_err(),
        EvalError::DivisionByZero { .. }
    ));
    assert!(matches!(
        parse("x^0.5").evaluate(-1.0).unwrap_err(),
        EvalError::FractionalPowOfNegative { .. }
    ));
    assert!(matches!(
        parse("exp(x)").evaluate(1000.0).unwrap_err(),
        EvalError::NonFinite { .. }
    ));
    // negative base with integer exponent is fine
    assert_eq!(parse("x^3").evaluate(-2.0).unwrap(), -8.0);
}

#[test]
fn derivative_rules() {
    assert_eq!(parse("x^2").differentiate().unwrap().ast, parse("2*x").ast);
    assert_eq!(parse("7").differentiate().unwrap().ast, Ast::Const(0.0));
    assert_eq!(
        parse("exp(2*x)").differentiate().unwrap().ast,
        // exp(2x) * 2 by the chain rule with identity folding
        Ast::Mul(
            Box::new(Ast::Exp(Box::new(Ast::Mul(
                Box::new(Ast::Const(2.0)),
                Box::new(Ast::Var)
            )))),
            Box::new(Ast::Const(2.0)),
        )
    );
    assert!(matches!(
        parse("abs(x)").differentiate().unwrap_err(),
        DiffError::AbsNotDifferentiable
    ));
}

#[test]
fn derivative_of_quotient_and_log() {
    let f = parse("ln(1 + x^2)");
    let fp = f.differentiate().unwrap();
    // f'(x) = 2x/(1+x^2); check numerically at a few points
    for &x in &[0.0, 0.5, 2.0] {
        let expected = 2.0 * x / (1.0 + x * x);
        assert!((fp.evaluate(x).unwrap() - expected).abs() < 1e-12);
    }
}

/// Deterministic random expression in the differentiable fragment
/// (no abs, ln, or division).
fn gen_diff_safe(rng: &mut SplitMix64, depth: usize) -> Ast {
    let choice = if depth == 0 { rng.next_u64() % 2 } else { rng.next_u64() % 6 };
    match choice {
        0 => Ast::Const((rng.next_u64() % 41) as f64 / 8.0),
        1 => Ast::Var,
        2 => Ast::Add(
            Box::new(gen_diff_safe(rng, depth - 1)),
            Box::new(gen_diff_safe(rng, depth - 1)),
        ),
        3 => Ast::Sub(
            Box::new(gen_diff_safe(rng, depth - 1)),
            Box::new(gen_diff_safe(rng, depth - 1)),
        ),
        4 => Ast::Mul(
            Box::new(gen_diff_safe(rng, depth - 1)),
            Box::new(gen_diff_safe(rng, depth - 1)),
        ),
        _ => {
            let exponents = [1.0, 1.5, 2.0, 3.0, 4.0];
            let e = exponents[(rng.next_u64() % 5) as usize];
            Ast::Pow(Box::new(Ast::Abs(Box::new(gen_diff_safe(rng, depth - 1)))), e)
        }
    }
}

/// Derivative agrees with a central finite difference on 50 generated
/// expressions at 100 points each, within 1e-6 relative.
#[test]
fn derivative_matches_finite_differences_on_generated_corpus() {
    let mut rng = SplitMix64::new(20240817);
    let mut checked = 0;
    while checked < 50 {
        let mut ast = gen_diff_safe(&mut rng, 3);
        // the generator uses Abs only as a positivizer for Pow bases;
        // replace those with squares so the tree stays differentiable
        ast = strip_abs(ast);
        let f = FunctionSpec::from_ast(ast);
        let fp = match f.differentiate() {
            Ok(fp) => fp,
            Err(_) => continue,
        };
        let h = 1e-5;
        let mut usable = true;
        for k in 0..100 {
            let x = 0.1 + 1.3 * (k as f64 + rng.next_f64()) / 100.0;
            let (fw, bw, dv) = match (f.evaluate(x + h), f.evaluate(x - h), fp.evaluate(x)) {
                (Ok(a), Ok(b), Ok(d)) => (a, b, d),
                _ => {
                    usable = false;
                    break;
                }
            };
            let fd = (fw - bw) / (2.0 * h);
            assert!(
                (fd - dv).abs() <= 1e-6 * (1.0 + dv.abs()),
                "f = {}, x = {x}: fd {fd} vs derivative {dv}",
                f.source_text
            );
        }
        if usable {
            checked += 1;
        }
    }
}

fn strip_abs(ast: Ast) -> Ast {
    match ast {
        Ast::Abs(inner) => Ast::Pow(Box::new(strip_abs(*inner)), 2.0),
        Ast::Add(a, b) => Ast::Add(Box::new(strip_abs(*a)), Box::new(strip_abs(*b))),
        Ast::Sub(a, b) => Ast::Sub(Box::new(strip_abs(*a)), Box::new(strip_abs(*b))),
        Ast::Mul(a, b) => Ast::Mul(Box::new(strip_abs(*a)), Box::new(strip_abs(*b))),
        Ast::Div(a, b) => Ast::Div(Box::new(strip_abs(*a)), Box::new(strip_abs(*b))),
        Ast::Pow(a, c) => Ast::Pow(Box::new(strip_abs(*a)), c),
        Ast::Exp(a) => Ast::Exp(Box::new(strip_abs(*a))),
        Ast::Ln(a) => Ast::Ln(Box::new(strip_abs(*a))),
        Ast::Neg(a) => Ast::Neg(Box::new(strip_abs(*a))),
        leaf => leaf,
    }
}

// Strategy for printable ASTs: Neg never wraps a bare constant (the parser
// folds those to negative constants), exponents come from a fixed set.
fn ast_strategy() -> impl Strategy<Value = Ast> {
    let leaf = prop_oneof![
        (0u32..400).prop_map(|n| Ast::Const(n as f64 / 16.0)),
        Just(Ast::Var),
    ];
    leaf.prop_recursive(4, 64, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Ast::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Ast::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Ast::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Ast::Div(Box::new(a), Box::new(b))),
            (inner.clone(), prop::sample::select(vec![-2.0, -0.5, 0.5, 2.0, 3.0]))
                .prop_map(|(a, e)| Ast::Pow(Box::new(a), e)),
            inner.clone().prop_map(|a| Ast::Exp(Box::new(a))),
            inner.clone().prop_map(|a| Ast::Ln(Box::new(a))),
            inner.clone().prop_map(|a| Ast::Abs(Box::new(a))),
            inner.prop_map(|a| match a {
                // mirror the parser's normalizations: negated constants fold
                // and double negations cancel
                Ast::Const(c) => Ast::Const(-c),
                Ast::Neg(u) => *u,
                other => Ast::Neg(Box::new(other)),
            }),
        ]
    })
}

proptest! {
    /// parse . print is the identity on ASTs.
    #[test]
    fn print_parse_round_trip(ast in ast_strategy()) {
        let printed = ast.to_string();
        let reparsed = FunctionSpec::parse(&printed)
            .unwrap_or_else(|e| panic!("`{printed}` failed to re-parse: {e}"));
        prop_assert_eq!(reparsed.ast, ast, "printed form: {}", printed);
    }
}
