use proptest::prelude::*;

use super::*;
use crate::actions::regularized_weight;

fn sym(n: &str) -> SuperNumber {
    SuperNumber::sym(n)
}

#[test]
fn regularized_weight_literal() {
    let w = parse_expr("eps - i*thetabar*theta/hbar").unwrap();
    assert_eq!(w, regularized_weight());
}

#[test]
fn theta_squares_to_zero() {
    assert!(parse_expr("theta*theta").unwrap().is_zero());
    assert_eq!(
        parse_expr("theta*thetabar + thetabar*theta").unwrap(),
        SuperNumber::zero()
    );
}

#[test]
fn unbalanced_paren_position() {
    let err = parse_expr("1/(eps").unwrap_err();
    assert!(matches!(err, ParseError::Syntax { .. }), "{err}");
    assert_eq!(err.position(), Some((1, 7)));
}

#[test]
fn positions_on_later_lines() {
    let err = parse_expr("eps +\n  hbar * )").unwrap_err();
    assert_eq!(err.position(), Some((2, 10)));
    let err = parse_expr("eps +\n  nosuchname").unwrap_err();
    assert_eq!(
        err,
        ParseError::UnknownSymbol {
            name: "nosuchname".into(),
            line: 2,
            column: 3
        }
    );
}

#[test]
fn juxtaposition_is_rejected() {
    assert_eq!(parse_expr("2 eps").unwrap_err().position(), Some((1, 3)));
    assert!(parse_expr("2eps").is_err());
}

#[test]
fn precedence() {
    let x = sym("x");
    assert_eq!(parse_expr("-x^2").unwrap(), -(&x * &x));
    assert_eq!(parse_expr("-x*hbar").unwrap(), -(&x * &sym("hbar")));
    assert_eq!(parse_expr("1 - 2 - 3").unwrap(), SuperNumber::int(-4));
    assert_eq!(
        parse_expr("3/2*x").unwrap(),
        x.scale(&RatFunc::from_ratio(3, 2))
    );
    assert_eq!(parse_expr("2*(1+i)").unwrap(), parse_expr("2 + 2*i").unwrap());
}

#[test]
fn primes_and_odd_jets() {
    let v = parse_expr("x'' + c'*cbar''").unwrap();
    assert_eq!(v.body(), RatFunc::sym("x''"));
    assert!(parse_expr("c*c").unwrap().is_zero());
    assert!(matches!(
        parse_expr("eps'"),
        Err(ParseError::UnknownSymbol { .. })
    ));
}

#[test]
fn division_by_zero_body_reports_operator() {
    let err = parse_expr("eps/theta").unwrap_err();
    assert!(matches!(err, ParseError::Eval { .. }));
    assert_eq!(err.position(), Some((1, 4)));
    assert!(parse_expr("1/0").is_err());
}

#[test]
fn plus_branch_skeleton() {
    let v = parse_vierbein("[[1,0,0],[gamma,b,c],[delta,d,e]]").unwrap();
    let g = VierbeinParams::generic();
    assert!(v.a.is_one() && v.alpha.is_zero() && v.beta.is_zero());
    assert_eq!((v.gamma, v.b, v.c), (g.gamma, g.b, g.c));
    assert_eq!((v.delta, v.d, v.e), (g.delta, g.d, g.e));
}

#[test]
fn odd_in_even_slot() {
    let err = parse_vierbein("[[theta,0,0],[0,1,0],[0,0,1]]").unwrap_err();
    match err {
        ParseError::ParityMismatch { slot, entry, .. } => {
            assert_eq!(slot, "(t,t)");
            assert_eq!(entry, "a");
        }
        other => panic!("{other}"),
    }
    let err = parse_vierbein("[[1,0,0],[0,1,0],[eps,0,1]]").unwrap_err();
    assert!(matches!(err, ParseError::ParityMismatch { entry: "delta", .. }));
    let err = parse_vierbein("[[1,0,0],[0,1 + theta,0],[0,0,1]]").unwrap_err();
    assert!(matches!(err, ParseError::ParityMismatch { entry: "b", .. }));
}

#[test]
fn short_matrix_is_a_syntax_error() {
    let err = parse_matrix("[[1,0,0],[0,1,0]]").unwrap_err();
    assert_eq!(err.position(), Some((1, 17)));
}

#[test]
fn matrix_without_macros_reads_ghosts() {
    let m = parse_matrix("[[1,0,0],[0,1,c],[0,0,1]]").unwrap();
    assert!(m[1][2].is_odd());
}

#[test]
fn bindings() {
    let b = parse_bindings("eps = 1/2, hbar=3\nx' = -i").unwrap();
    assert_eq!(b[&Symbol::new("eps")], RatFunc::from_ratio(1, 2));
    assert_eq!(b[&Symbol::new("x'")], -RatFunc::i());
    assert_eq!(b.len(), 3);
    assert!(matches!(
        parse_bindings("eps = theta"),
        Err(ParseError::NotScalar { .. })
    ));
    assert!(parse_bindings("theta = 1").is_err());
    assert!(parse_bindings("eps = 1 hbar = 2").is_err());
    assert!(parse_bindings("").unwrap().is_empty());
}

const EVEN: &[&str] = &["eps", "hbar", "x", "x'", "V''", "pi5", "sqrt2"];
const ODD: &[&str] = &["theta", "thetabar", "c", "cbar'"];

fn coeff() -> impl Strategy<Value = RatFunc> {
    (-6i64..7, 1i64..5, -3i64..4, proptest::sample::select(EVEN), 0u32..3, any::<bool>()).prop_map(
        |(n, d, im, s, e, pole)| {
            let c = &RatFunc::from_ratio(n, d) + &(&RatFunc::i() * &RatFunc::from_int(im));
            let m = RatFunc::sym(s).pow(e);
            let v = &c * &m;
            if pole {
                let den = &RatFunc::sym(s) + &RatFunc::from_int(d);
                v.div(&den).unwrap()
            } else {
                v
            }
        },
    )
}

fn supernumber() -> impl Strategy<Value = SuperNumber> {
    proptest::collection::vec((coeff(), proptest::sample::subsequence(ODD, 0..=3)), 0..5).prop_map(
        |terms| {
            terms.into_iter().fold(SuperNumber::zero(), |acc, (c, gens)| {
                let g: SuperNumber = gens
                    .iter()
                    .fold(SuperNumber::one(), |p, n| &p * &parse_expr(n).unwrap());
                &acc + &g.scale(&c)
            })
        },
    )
}

#[derive(Clone, Debug)]
enum Ast {
    Leaf(String),
    Neg(Box<Ast>),
    Bin(Box<Ast>, char, Box<Ast>),
    Pow(Box<Ast>, u32),
}

impl Ast {
    fn render(&self) -> String {
        match self {
            Ast::Leaf(s) => s.clone(),
            Ast::Neg(a) => format!("-({})", a.render()),
            Ast::Bin(a, op, b) => format!("({} {op} {})", a.render(), b.render()),
            Ast::Pow(a, e) => format!("({})^{e}", a.render()),
        }
    }
}

fn ast() -> impl Strategy<Value = Ast> {
    let leaf = prop_oneof![
        (0i64..9).prop_map(|n| Ast::Leaf(n.to_string())),
        proptest::sample::select(EVEN).prop_map(|s| Ast::Leaf(s.to_string())),
        proptest::sample::select(ODD).prop_map(|s| Ast::Leaf(s.to_string())),
        Just(Ast::Leaf("i".into())),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Ast::Neg(Box::new(a))),
            (inner.clone(), proptest::sample::select(&['+', '-', '*'][..]), inner.clone())
                .prop_map(|(a, op, b)| Ast::Bin(Box::new(a), op, Box::new(b))),
            (inner.clone(), 1u32..4).prop_map(|(a, e)| Ast::Pow(Box::new(a), e)),
            (inner.clone(), 1i64..5).prop_map(|(a, k)| Ast::Bin(
                Box::new(a),
                '/',
                Box::new(Ast::Leaf(format!("(eps + {k})")))
            )),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_then_parse_is_identity(x in supernumber()) {
        let printed = print_expr(&x);
        prop_assert_eq!(parse_expr(&printed).unwrap(), x, "{}", printed);
    }

    #[test]
    fn parsed_values_reparse_from_print(a in ast()) {
        let v = parse_expr(&a.render()).unwrap();
        let again = parse_expr(&print_expr(&v)).unwrap();
        prop_assert_eq!(&again, &v);
        prop_assert_eq!(print_expr(&again), print_expr(&v));
    }

    #[test]
    fn frame_literal_round_trip(x in supernumber(), y in supernumber()) {
        let src = format!(
            "[[{},0,0],[{},b,c],[delta,d,e]]",
            print_expr(&SuperNumber::from(x.body())),
            print_expr(&(&SuperNumber::theta() * &SuperNumber::from(y.body()))),
        );
        let v = parse_vierbein(&src).unwrap();
        prop_assert_eq!(v.a, SuperNumber::from(x.body()));
        prop_assert_eq!(v.gamma, &SuperNumber::theta() * &SuperNumber::from(y.body()));
    }
}
