fn main() {
    // thin front door; real wiring lands in meixner::cli
    eprintln!("meixner: command-line interface not wired yet");
    std::process::exit(2);
}
