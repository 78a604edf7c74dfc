//! Exact definitions of every row of generated trace structures, with the
//! parameter counts and formula templates.

use posetdef::definability::{assemble_psi, Ctx};
use posetdef::generate::{trace_instance, TRACE_FAMILIES};

fn main() {
    for (k, family) in TRACE_FAMILIES.iter().enumerate() {
        let Some(inst) = trace_instance(3, k as u64, family, 8) else { continue };
        println!("{family}: {} rows, N={}", inst.trace.rows(), inst.n_param);
        for row in 0..inst.trace.rows().min(3) {
            let ctx = Ctx::new(&inst.trace, &inst.seq, row).unwrap();
            let psi = assemble_psi(&ctx).unwrap();
            assert!(psi.exact());
            let text = psi.formula.to_sexpr();
            let shown = if text.len() > 120 { format!("{}…", &text[..120]) } else { text };
            println!("  row {row}: {} params, {shown}", psi.formula.param_count());
        }
    }
}
