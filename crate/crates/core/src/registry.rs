//! Citation anchors for every verdict and corpus row.
//!
//! Slugs are stable identifiers; the statement is a one-line paraphrase of
//! the result being applied.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Theorem {
    pub slug: &'static str,
    pub statement: &'static str,
}

const THEOREMS: &[Theorem] = &[
    Theorem { slug: "schur", statement: "every finite coloring has a monochromatic x+y=z with x!=y" },
    Theorem { slug: "rado-three-variable", statement: "ax+by=cz is PR iff a=c, b=c or a+b=c" },
    Theorem { slug: "rado-columns", statement: "sum c_i x_i = 0 is PR iff some nonempty subset of the c_i sums to 0" },
    Theorem { slug: "van-der-waerden", statement: "every finite coloring contains monochromatic arithmetic progressions" },
    Theorem { slug: "sum-difference-ramsey", statement: "both x+y=z and -x+y=z are Ramsey PR in (x,y),z" },
    Theorem { slug: "product-ratio-ramsey", statement: "xy=z and y=zx are Ramsey PR in (x,y),z" },
    Theorem { slug: "polynomial-classification", statement: "ax^n+P(y)=Q(z) is Ramsey PR in (x,y),z iff it is a multiple of x+y=z or of x-y=-z" },
    Theorem { slug: "moreira-triples", statement: "ax^k1+by^k2=cz^k3 is Ramsey PR in (x,y)|z iff k3=1" },
    Theorem { slug: "two-variable", statement: "no two-variable polynomial equation is Ramsey PR" },
    Theorem { slug: "two-variable-divisibility", statement: "P(x,y)=0 is solved by equivalent infinite points iff x-y divides P" },
    Theorem { slug: "generalized-sum-product", statement: "n a+m b ~ k a^r b^s for a Ramsey pair iff r=s=1 and exactly one of n,m is 0 with the other positive" },
    Theorem { slug: "generalized-sum-product-shapes", statement: "with integer r,s and n+m!=0 only (1,1),(0,1),(1,0),(-1,1) can occur; (0,1) and (1,0) force m=k=+-n" },
    Theorem { slug: "generalized-sum-product-open", statement: "the case (r,s)=(-1,1) is not settled" },
    Theorem { slug: "pairwise-sum-product", statement: "a+b and ab are never equivalent for a Ramsey pair (a,b); (x+y=z)&(xy=t) is not Ramsey PR in (x,y)|z,t" },
    Theorem { slug: "product-exponent", statement: "ab and a^b are never equivalent for a Ramsey pair" },
    Theorem { slug: "exponent-swap", statement: "a^b and b^a are never equivalent for a Ramsey pair" },
    Theorem { slug: "shifted-exponent", statement: "f(a)2^b and g(a,b) are never equivalent for a Ramsey pair, g an integer polynomial" },
    Theorem { slug: "exponential-sum", statement: "g(x)+f(y)=f(z) with f(y)=2^y is not Ramsey PR" },
    Theorem { slug: "no-ramsey-3ap", statement: "equivalent a,b,c with (a,b) a Ramsey pair never form a 3-term arithmetic progression in any order" },
    Theorem { slug: "sandwich-bound", statement: "for deg P = deg Q = d > 1 there is n with Q(c^(1/d) b - n) <= P(b) <= Q(c^(1/d) b + n)" },
    Theorem { slug: "bpr-open", statement: "partition regularity of (x+y=z)&(xy=t) in one block is open since the 1970s" },
    Theorem { slug: "additive-schur", statement: "additive Schur theorem" },
    Theorem { slug: "multiplicative-schur", statement: "multiplicative Schur theorem" },
    Theorem { slug: "moreira-bpr", statement: "(x+y=z)&(xy=t) is BPR in x,z,t|y" },
    Theorem { slug: "follows-from-moreira", statement: "coarsening of the x,z,t|y block structure" },
    Theorem { slug: "trivial", statement: "trivial" },
    Theorem { slug: "separate-block-lemma", statement: "Ramsey PR in (x,t)|y|z and (x,z)|y|t, not in (z,t)|x|y" },
    Theorem { slug: "shared-block-lemma", statement: "Ramsey PR in (x,z),y|t and (x,t),y|z" },
    Theorem { slug: "additive-idempotents", statement: "use additive idempotents" },
    Theorem { slug: "multiplicative-idempotents", statement: "use multiplicative idempotents" },
    Theorem { slug: "follows-from-ztxy", statement: "follows from (z,t)|x|y" },
    Theorem { slug: "follows-from-xyzt", statement: "follows from (x,y)|z,t" },
    Theorem { slug: "stronger-than-open", statement: "stronger than the open one-block case" },
    Theorem { slug: "never-considered", statement: "never considered" },
];

pub fn registry() -> &'static [Theorem] {
    THEOREMS
}

pub fn lookup(slug: &str) -> Option<&'static Theorem> {
    THEOREMS.iter().find(|t| t.slug == slug)
}
