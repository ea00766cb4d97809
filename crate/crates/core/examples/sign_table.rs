use dimshift::derived::sign_factor;

fn main() {
    for n in 1..=12 {
        let exponent = (n * n + n) / 2;
        println!(
            "n = {n:2}  exponent {exponent:3}  sign {:+}",
            sign_factor(n)
        );
    }
}
