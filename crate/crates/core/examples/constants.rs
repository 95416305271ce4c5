use squarefull::asymptotics::ZetaConstants;

fn main() -> squarefull::Result<()> {
    let c = ZetaConstants::compute()?;
    println!("ζ(3/2) = {:.12}", c.z32);
    println!("ζ(3)   = {:.12}", c.z3);
    println!("ζ(2/3) = {:.12}", c.z23);
    println!("ζ(2)   = {:.12}  (π²/6 = {:.12})", c.z2, std::f64::consts::PI.powi(2) / 6.0);
    println!("ζ(4/3) = {:.12}", c.z43);
    println!("θ₁ = {:.12}, θ₂ = {:.12}", c.theta1, c.theta2);
    println!("∫S(y)²y^(1/3)dy = {:.12}", c.sinc_moment);
    println!("C∞ = {:.12}", c.c_inf);
    Ok(())
}
