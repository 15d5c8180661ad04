//! Exact rationals, numbers a + b√d, and quadratic roots.

use transversal_core::exact::{solve_quadratic, QuadExt, Rational, RootSet};

fn r(s: &str) -> Rational {
    s.parse().expect("rational literal")
}

fn main() -> transversal_core::Result<()> {
    let x = r("1/3") + r("1/6");
    println!("1/3 + 1/6 = {x}  ({})", x.to_decimal(12));

    // 17/12 - √2 is positive but tiny; the sign comes from comparing squares
    let close = QuadExt::new(r("17/12"), r("-1"), r("2"))?;
    println!(
        "sign(17/12 - sqrt 2) = {:?}, about {}",
        close.sign(),
        close.to_decimal(20)
    );

    // √8 and 2√2 normalize to the same radicand
    let a = QuadExt::new(r("0"), r("1"), r("8"))?;
    let b = QuadExt::new(r("0"), r("2"), r("2"))?;
    println!("sqrt 8 == 2 sqrt 2: {}", a == b);
    println!("sqrt 8 * 2 sqrt 2 = {}", a.try_mul(&b)?);

    for (p, q, c) in [
        ("1", "0", "-2"),
        ("1", "-2", "1"),
        ("1", "0", "1"),
        ("0", "3", "-1"),
    ] {
        let roots = solve_quadratic(&r(p), &r(q), &r(c))?;
        let shown: Vec<String> = roots.roots().iter().map(|z| z.to_string()).collect();
        let kind = match roots {
            RootSet::None => "none",
            RootSet::One(_) => "one",
            RootSet::Two(..) => "two",
            RootSet::All => "all",
        };
        println!("{p}x^2 + {q}x + {c} = 0: {kind} {shown:?}");
    }
    Ok(())
}
