//! A commuting-subgroup key exchange over the central product, and the
//! conjugacy-search attack that recovers the shared key.

use extraspecial::cli::commands::demo_keyexchange;

fn main() {
    let t = demo_keyexchange(1009, 2, 2, 7, false).unwrap();
    let show = |e| serde_json::to_string(e).unwrap();
    println!("public      {}", show(&t.public));
    println!("alice sends {}", show(&t.alice_sends));
    println!("bob sends   {}", show(&t.bob_sends));
    println!("shared key  {} (agree: {})", show(&t.alice_key), t.keys_agree);
    println!("attacker    {} (success: {})", show(&t.attacker.key), t.attacker.success);

    let wins = (0..100).filter(|&s| demo_keyexchange(1009, 2, 2, s, false).unwrap().attacker.success).count();
    println!("{wins}/100 seeds broken");
}
