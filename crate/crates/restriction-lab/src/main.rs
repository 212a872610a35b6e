fn main() {
    // Placeholder until the experiment runner lands.
    eprintln!("restriction-lab: experiment runner not wired up yet");
    std::process::exit(2);
}
