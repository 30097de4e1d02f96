use serde::{Deserialize, Serialize};
use std::fmt;

/// One of the two players. Player identity is observable: announcements
/// carry who spoke, and the alternating schedule is keyed to it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    A,
    B,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::A => Player::B,
            Player::B => Player::A,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::A => write!(f, "A"),
            Player::B => write!(f, "B"),
        }
    }
}

/// Speaking schedule: both players every tick, or strict alternation with a
/// known starter (the starter speaks at odd times 1, 3, 5, ...).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpeechMode {
    Simultaneous,
    Alternating { starter: Player },
}

impl SpeechMode {
    /// Players allowed to speak at time `t` (t >= 1).
    pub fn permitted(&self, t: u32) -> &'static [Player] {
        match self {
            SpeechMode::Simultaneous => &[Player::A, Player::B],
            SpeechMode::Alternating { starter } => {
                let odd = t % 2 == 1;
                match (starter, odd) {
                    (Player::A, true) | (Player::B, false) => &[Player::A],
                    _ => &[Player::B],
                }
            }
        }
    }

    /// True if `player` may speak at time `t`.
    pub fn may_speak(&self, player: Player, t: u32) -> bool {
        self.permitted(t).contains(&player)
    }

    /// Earliest time >= `t` at which `player` may speak.
    pub fn next_slot(&self, player: Player, t: u32) -> u32 {
        if self.may_speak(player, t) {
            t
        } else {
            t + 1
        }
    }

    /// Number of consecutive steps after which the permitted-speaker pattern
    /// repeats: 1 when simultaneous, 2 when alternating.
    pub fn period(&self) -> u32 {
        match self {
            SpeechMode::Simultaneous => 1,
            SpeechMode::Alternating { .. } => 2,
        }
    }

    pub fn is_alternating(&self) -> bool {
        matches!(self, SpeechMode::Alternating { .. })
    }
}

impl fmt::Display for SpeechMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpeechMode::Simultaneous => write!(f, "simultaneous"),
            SpeechMode::Alternating { starter } => write!(f, "alternating (starter {starter})"),
        }
    }
}
