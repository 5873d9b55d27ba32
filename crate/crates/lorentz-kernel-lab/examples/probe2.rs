use std::time::Instant;
fn main() {
    let t = Instant::now();
    for l in 1..=24u32 {
        let _ = lorentz_kernel_lab::cocycle::b_component_closed(l, 1.0).unwrap();
    }
    println!("exact B build l<=24: {:?}", t.elapsed());
    let t = Instant::now();
    let g = lorentz_kernel_lab::group::boost(0.8);
    let h = lorentz_kernel_lab::group::boost(1.1);
    let r = lorentz_kernel_lab::cocycle::verify_cocycle(&g, &h, 24).unwrap();
    println!("verify boost pair L=24: {r:.2e} in {:?}", t.elapsed());
    let mut st = 5u64;
    let t = Instant::now();
    let g = lorentz_kernel_lab::group::random_element(&mut st, 1.5);
    let h = lorentz_kernel_lab::group::random_element(&mut st, 1.5);
    let r = lorentz_kernel_lab::cocycle::verify_cocycle(&g, &h, 24).unwrap();
    println!("verify random pair L=24: {r:.2e} in {:?}", t.elapsed());
}
