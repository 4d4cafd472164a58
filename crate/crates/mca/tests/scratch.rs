use mca::elemfun::f_ln;
use mca::mpfloat::{Float, RoundingMode};

#[test]
fn ln_case() {
    let x = Float::from_interchange("+0x1463836bb985539051c21635527c0895f7e5p-178:141").unwrap();
    for mode in [
        RoundingMode::NearestEven,
        RoundingMode::TowardZero,
        RoundingMode::TowardPositive,
        RoundingMode::TowardNegative,
    ] {
        let direct = f_ln(&x, 234, mode).unwrap();
        println!("mode {mode:?}: direct {} flag {:?}", direct.0.to_interchange(), direct.1);
        for wide in [300u32, 434, 700, 1200] {
            let w = f_ln(&x, wide, RoundingMode::NearestEven).unwrap().0;
            let r = w.round_to_precision(234, mode).0;
            println!("  via {wide}: {}", r.to_interchange());
        }
    }
    panic!("show output");
}
