"""Hand-worked expectations shared by the unit tests and the acceptance suite."""

# The fig1 reach-reg automaton: some prefix ending in q1 (just after a c) has as
# many a's as b's, and c occurs infinitely often.
FIG1_CASES = [
    ("", "c", True),  # the prefix "c" has image (0,0)
    ("ab", "c", True),  # "abc" has image (1,1)
    ("a", "c", False),  # every prefix ending in q1 has one more a
    ("abcb", "a", False),  # only one c
    ("abcb", "ac", True),  # "abc" hits, c recurs
    ("a", "bc", True),  # "abc" again
    ("aa", "bc", True),  # "aabcbc" has image (2,2)
    ("", "ab", False),  # never reaches q1
    ("b", "ac", True),  # "bac" has image (1,1)
    ("aab", "c", False),  # stuck at (2,1)
]
