#!/usr/bin/env python3
"""Integer addition over LSB-first bit strings.

Reads one argument tuple per line (words separated by spaces, "e" for the
empty word) and prints one result per line.
"""
import sys


def value(word):
    if word == "e":
        return 0
    return int(word[::-1], 2)


def bits(n):
    return format(n, "b")[::-1]


for line in sys.stdin:
    words = line.split()
    if not words:
        continue
    print(bits(sum(value(w) for w in words)))
