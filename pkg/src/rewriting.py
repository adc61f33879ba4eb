"""
Adjacent-pair rewriting of generator words, shared by the box and simplex
operator kernels, plus Knuth-Bendix completion for path presentations.

Words are tuples in function-composition order: the rightmost letter acts
first. A rule looks at an adjacent pair (left, right), meaning left∘right,
and either returns None (pair already in order) or a replacement tuple.
"""

import logging
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple, TypeVar

try:
    from .errors import BudgetExceeded
except ImportError:
    from errors import BudgetExceeded

logger = logging.getLogger(__name__)

G = TypeVar("G")
PairRule = Callable[[G, G], Optional[Tuple[G, ...]]]


def rewrite_to_normal_form(word: Sequence[G], rule: PairRule,
                           max_steps: int = 100000) -> Tuple[G, ...]:
    """
    Rewrite a word until no adjacent pair matches the rule.

    Args:
        word: Generators in composition order
        rule: Pair rule returning a replacement or None
        max_steps: Guard against non-terminating rule tables

    Returns:
        The irreducible word
    """
    current: List[G] = list(word)
    steps = 0
    i = 0
    while i < len(current) - 1:
        replacement = rule(current[i], current[i + 1])
        if replacement is None:
            i += 1
            continue
        current[i:i + 2] = list(replacement)
        steps += 1
        if steps > max_steps:
            raise BudgetExceeded("rewrite_to_normal_form", steps, max_steps)
        # A rewrite can only create a new redex next to the replaced span.
        i = max(i - 1, 0)
    return tuple(current)


Word = Tuple[Hashable, ...]
Rule = Tuple[Word, Word]


def shortlex_key(word: Word) -> Tuple[int, Tuple[str, ...]]:
    return (len(word), tuple(str(letter) for letter in word))


def orient(lhs: Word, rhs: Word) -> Optional[Rule]:
    """Orient an equation so that the larger side (shortlex) rewrites."""
    if lhs == rhs:
        return None
    if shortlex_key(lhs) > shortlex_key(rhs):
        return (lhs, rhs)
    return (rhs, lhs)


def reduce_word(word: Word, rules: Sequence[Rule]) -> Word:
    """Apply string rules left to right until irreducible."""
    current = tuple(word)
    changed = True
    while changed:
        changed = False
        for lhs, rhs in rules:
            n = len(lhs)
            for start in range(len(current) - n + 1):
                if current[start:start + n] == lhs:
                    current = current[:start] + rhs + current[start + n:]
                    changed = True
                    break
            if changed:
                break
    return current


def _critical_pairs(r1: Rule, r2: Rule) -> List[Tuple[Word, Word]]:
    """Overlaps of lhs1 suffix with lhs2 prefix, and lhs2 inside lhs1."""
    (l1, s1), (l2, s2) = r1, r2
    pairs = []
    for k in range(1, min(len(l1), len(l2)) + 1):
        if l1[len(l1) - k:] == l2[:k] and not (k == len(l1) == len(l2) and r1 == r2):
            overlap_left = s1 + l2[k:]
            overlap_right = l1[:len(l1) - k] + s2
            pairs.append((overlap_left, overlap_right))
    if len(l2) < len(l1):
        for start in range(len(l1) - len(l2) + 1):
            if l1[start:start + len(l2)] == l2:
                pairs.append((s1, l1[:start] + s2 + l1[start + len(l2):]))
    return pairs


def knuth_bendix(equations: Sequence[Tuple[Word, Word]],
                 max_steps: int = 2000) -> Optional[List[Rule]]:
    """
    Complete a string rewriting system under the shortlex order.

    Args:
        equations: Pairs of words to be identified
        max_steps: Maximum number of critical pairs examined

    Returns:
        A confluent, interreduced rule list, or None if completion did not
        finish within the step budget
    """
    rules: List[Rule] = []
    pending = list(equations)
    steps = 0
    while True:
        while pending:
            lhs, rhs = pending.pop()
            lhs, rhs = reduce_word(lhs, rules), reduce_word(rhs, rules)
            oriented = orient(lhs, rhs)
            if oriented is None:
                continue
            # Interreduce: drop rules whose lhs the new rule rewrites.
            kept: List[Rule] = []
            for old in rules:
                if reduce_word(old[0], [oriented]) != old[0]:
                    pending.append(old)
                else:
                    kept.append((old[0], reduce_word(old[1], kept + [oriented])))
            rules = kept + [oriented]

        new_pairs = []
        for r1 in rules:
            for r2 in rules:
                for left, right in _critical_pairs(r1, r2):
                    steps += 1
                    if steps > max_steps:
                        logger.debug(f"Knuth-Bendix gave up after {steps} critical pairs")
                        return None
                    a, b = reduce_word(left, rules), reduce_word(right, rules)
                    if a != b:
                        new_pairs.append((a, b))
        if not new_pairs:
            rules.sort(key=lambda rule: shortlex_key(rule[0]))
            return rules
        pending.extend(new_pairs)
