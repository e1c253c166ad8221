fn main() {
    println!("garnier CLI placeholder");
}
