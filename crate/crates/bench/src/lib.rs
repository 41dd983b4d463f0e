//! Inputs shared by the criterion benches.

use tweetnb_core::Tweet;

const WORDS: [&str; 16] = [
    "Pemilihan", "gubernur", "yang", "bagus", "mendukung", "calon", "kecewa", "dengan",
    "program", "tidak", "jelas", "semoga", "menang", "kepemimpinan", "rakyat", "pembangunan",
];

/// Tweet-like texts with mentions, links, hashtags and emoticons mixed in.
pub fn sample_tweets(n: usize) -> Vec<Tweet> {
    (0..n)
        .map(|i| {
            let mut text = String::from("RT @warga: ");
            for j in 0..12 {
                text.push_str(WORDS[(i * 7 + j * 3) % WORDS.len()]);
                text.push(' ');
            }
            text.push_str(if i % 2 == 0 { "#PilgubJabar :) http://t.co/abc" } else { "#ridwankamil :(" });
            Tweet::new(i.to_string(), text)
        })
        .collect()
}
