use garnier_core::families::*;
use garnier_core::symbols::SymbolRegistry;

#[test]
fn dump_gar92_main() {
    let reg = SymbolRegistry::standard();
    let sol = expand_family(FamilyId::Gar92Main, Some(12)).unwrap();
    for v in ["q1", "q2", "p1", "p2"] {
        let s = sol.series_for(reg.sym(v));
        println!("== {v} (trunc {})", s.truncation());
        for (n, c) in s.coeffs() {
            println!("  [{n}] {c}");
        }
    }
    println!("ledger: {:?}", sol.ledger);
}
