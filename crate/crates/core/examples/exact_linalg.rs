use dimshift::linalg::{kernel_basis, quotient, solve, Matrix, Subspace};
use dimshift::rational::Rational;

fn main() -> dimshift::Result<()> {
    let a = Matrix::from_ints(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, -1]]);
    println!("rank {}", a.rank());

    let ker = kernel_basis(&a);
    println!("kernel basis (columns):\n{:?}", ker.basis().to_rows());

    let b = Matrix::from_ints(&[&[6], &[12], &[0]]);
    let x = solve(&a, &b)?.expect("b is in the image");
    println!("a x = b with x = {:?}", x.to_rows());

    let half = Rational::new(1, 2);
    let w = Subspace::span(&Matrix::column_vector(vec![
        Rational::one(),
        half.clone(),
        half,
    ]));
    let q = quotient(3, &w)?;
    println!("Q^3 / w has dimension {}", q.dim());
    println!(
        "class of e1: {:?}",
        q.reduce(&Matrix::unit_vector(3, 0)).to_rows()
    );
    Ok(())
}
