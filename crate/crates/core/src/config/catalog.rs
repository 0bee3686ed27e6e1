use super::model::Configuration;
use super::parse::parse_config;

const CATALOG: &[(&str, &str)] = &[
    ("schur", "vars x y z; blocks (x y z); ramsey (x,y); formula x+y=z & x!=y"),
    ("schur-classical", "vars x y z; blocks (x y z); formula x+y=z & (x<y | x=y)"),
    ("difference", "vars x y z; blocks (x y z); ramsey (x,y); formula y=x+z"),
    ("product", "vars x y z; blocks (x y z); ramsey (x,y); formula x*y=z"),
    ("ratio", "vars x y z; blocks (x y z); ramsey (x,y); formula y=z*x"),
    (
        "pairwise-sum-product",
        "vars x y z t; blocks (x y) (z t); ramsey (x,y); formula x+y=z & x*y=t & x!=y",
    ),
    ("product-exponent", "vars x y z t; blocks (x y z t); ramsey (x,y); formula x^y=z & x*y=t"),
    ("exponent-swap", "vars x y z t; blocks (x y z t); ramsey (x,y); formula x^y=z & y^x=t"),
    ("shifted-exponent", "vars x y z t; blocks (x y z t); ramsey (x,y); formula x*2^y=z & x+y=t"),
    ("pythagorean", "vars x y z; blocks (x y z); ramsey (x,y); formula x^2+y^2=z^2"),
    ("square-shift", "vars x y z; blocks (x y z); ramsey (x,y); formula x^2+y=z"),
    ("3ap", "vars x y z; blocks (x y z); ramsey (x,y); formula x+y=2*z | x+z=2*y | y+z=2*x"),
    ("3ap-distinct", "vars x y z; blocks (x y z); formula x+z=2*y & x<y"),
    (
        "exp-sum",
        "vars x y z; blocks (x y) (z); ramsey (x,y); fn f = exp(2); fn g = poly(0,1); formula g(x)+f(y)=f(z)",
    ),
];

/// Every built-in configuration, in a fixed order.
pub fn builtin_catalog() -> Vec<(String, Configuration)> {
    CATALOG
        .iter()
        .map(|(name, _)| (name.to_string(), catalog_entry(name).expect("catalog entries parse")))
        .collect()
}

pub fn catalog_entry(name: &str) -> Option<Configuration> {
    let (_, body) = CATALOG.iter().find(|(n, _)| *n == name)?;
    Some(parse_config(&format!("config {name} {{ {body} }}")).expect("catalog entries parse"))
}
