use fanok::registry::FanoDescriptor;
use fanok::{ktheory, sod};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x22 = FanoDescriptor::new(1, 22)?;
    let e2 = ktheory::mukai_rank2_ch(x22)?;
    assert_eq!(ktheory::euler(&e2, &e2)?, 1.into());

    let v = sod::verify_rr(3)?;
    assert!(v.passed());
    Ok(())
}
