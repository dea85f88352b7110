"""Discrete communication protocol: 31-word vocabulary and fixed-length-4 messages.

Messages are tuples of vocabulary indices, right-padded with ``<pad>``. The
pad token never appears before a content token.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from importlib import resources

import numpy as np

PAD = "<pad>"
VOCAB_SIZE = 31
MESSAGE_LEN = 4


class UnknownWordError(ValueError):
    """Raised when a sentence contains a word outside the vocabulary."""

    def __init__(self, word: str, vocabulary: "Vocabulary"):
        self.word = word
        self.vocabulary = vocabulary
        super().__init__(
            f"unknown word {word!r}; vocabulary: {', '.join(vocabulary.words)}"
        )


class MessageTooLongError(ValueError):
    """Raised when a sentence has more than MESSAGE_LEN content tokens."""


class Vocabulary:
    """Ordered, immutable word list with index lookup. Index 0 is ``<pad>``."""

    def __init__(self, words: list[str]):
        if len(words) != VOCAB_SIZE:
            raise ValueError(f"vocabulary must have {VOCAB_SIZE} words, got {len(words)}")
        if len(set(words)) != len(words):
            raise ValueError("vocabulary words must be unique")
        if PAD not in words:
            raise ValueError(f"vocabulary must contain {PAD!r}")
        self.words = tuple(words)
        self.index = {w: i for i, w in enumerate(self.words)}
        self.pad_index = self.index[PAD]

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: str) -> bool:
        return word in self.index

    def content_indices(self) -> list[int]:
        return [i for i in range(len(self.words)) if i != self.pad_index]

    def hash(self) -> bytes:
        """SHA-256 over the newline-joined word list; stored in checkpoints."""
        return hashlib.sha256("\n".join(self.words).encode("utf-8")).digest()


def load_vocabulary(path=None) -> Vocabulary:
    """Read a newline-delimited vocab file; defaults to the bundled one."""
    if path is None:
        text = resources.files("blind_leads.data").joinpath("vocab.txt").read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    words = [line.strip() for line in text.splitlines() if line.strip()]
    return Vocabulary(words)


@dataclass(frozen=True)
class Message:
    """Exactly MESSAGE_LEN vocabulary indices, pad-filled suffix only."""

    tokens: tuple[int, int, int, int]

    def __post_init__(self):
        if len(self.tokens) != MESSAGE_LEN:
            raise ValueError(f"message must have {MESSAGE_LEN} tokens")
        seen_pad = False
        for t in self.tokens:
            if not 0 <= t < VOCAB_SIZE:
                raise ValueError(f"token index {t} out of range")
            if t == 0:
                seen_pad = True
            elif seen_pad:
                raise ValueError("pad token before content token")

    def content(self) -> tuple[int, ...]:
        return tuple(t for t in self.tokens if t != 0)


def message_from_content(content: list[int] | tuple[int, ...]) -> Message:
    """Pad a content-token list out to a canonical Message."""
    toks = tuple(content) + (0,) * (MESSAGE_LEN - len(content))
    return Message(toks)


def tokenize(text: str, vocab: Vocabulary) -> Message:
    """Lowercase, whitespace-split, map to indices, right-pad.

    Raises UnknownWordError / MessageTooLongError on bad input.
    """
    words = text.lower().split()
    if len(words) > MESSAGE_LEN:
        raise MessageTooLongError(
            f"sentence has {len(words)} words, maximum is {MESSAGE_LEN}"
        )
    indices = []
    for w in words:
        if w not in vocab:
            raise UnknownWordError(w, vocab)
        indices.append(vocab.index[w])
    return message_from_content(indices)


def detokenize(message: Message, vocab: Vocabulary) -> str:
    """Space-joined words with pads dropped; inverse of tokenize."""
    return " ".join(vocab.words[t] for t in message.tokens if t != vocab.pad_index)


def encode_one_hot(message: Message) -> np.ndarray:
    """Message as a (MESSAGE_LEN, VOCAB_SIZE) float32 one-hot matrix."""
    out = np.zeros((MESSAGE_LEN, VOCAB_SIZE), dtype=np.float32)
    out[np.arange(MESSAGE_LEN), message.tokens] = 1.0
    return out
