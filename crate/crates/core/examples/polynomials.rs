//! Parsing, division, φ-expansions, Taylor coefficients and resultants.
use valfram::cli::parse::parse_poly;
use valfram::poly::resultant;

fn main() {
    let f = parse_poly("x^4-4*x^2+36").unwrap();
    let phi = parse_poly("x^2-2").unwrap();
    let (q, r) = f.div_rem(&phi).unwrap();
    println!("{f} = ({q})({phi}) + {r}");
    let digits: Vec<String> = f.phi_expansion(&phi).unwrap().iter().map(|a| a.to_string()).collect();
    println!("{phi}-expansion: [{}]", digits.join(", "));
    let taylor: Vec<String> = phi.taylor_coeffs().iter().map(|c| c.to_string()).collect();
    println!("Taylor coefficients of {phi}: [{}]", taylor.join(", "));
    let g = parse_poly("x^2-6").unwrap();
    println!("Res({phi}, {g}) = {}", resultant(&phi, &g).unwrap());
    let same = parse_poly("(x^2+x+1)^2-2").unwrap() == parse_poly("x^4+2*x^3+3*x^2+2*x-1").unwrap();
    println!("(x^2+x+1)^2-2 expands to x^4+2x^3+3x^2+2x-1: {same}");
    println!("x^-1: {}", parse_poly("x^-1").unwrap_err());
}
