fn main() {
    std::process::exit(graph_containers::cli::run(std::env::args_os()));
}
