#!/usr/bin/env python3
# Copyright 2026 The natparse Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the toy pizza self-training fixture in this directory.

Writes golden.jsonl (16 labeled pairs), unlabeled.txt (60 utterances),
heldout.jsonl (60 labeled pairs) and paraphrases.jsonl. Output is fixed by
the seeds below; the files are checked in so tests never run this script.
"""

import json
import random

NUMS = ["one", "two"]
SIZES = ["small", "medium"]
TOPS = ["ham", "bacon", "sausage"]

OPENERS = ["i want", "i'd like", "can i get", "could i have", "please give me",
           "i'll go for", "let me get", "i need"]
WITH = ["with", "topped with", "along with", "with some"]
JOIN = ["and", "and", "plus", "with"]
NEG = ["and no {}", "but no {}", "but please avoid {}", "hold the {}", "without any {}"]


def canonical(order):
    num, size, tops, neg = order
    out = ["i", "want", num, size, "pizza", "with", tops[0]]
    if len(tops) == 2:
        out += ["and", tops[1]]
    if neg is not None:
        out += ["and", "no", neg]
    return " ".join(out)


def utterance(order, rng):
    num, size, tops, neg = order
    words = [rng.choice(OPENERS)]
    if num == "one":
        words.append(rng.choice(["one", "one", "a"]))
    else:
        words.append("two")
    words.append(size)
    noun = rng.choice(["pizza", "pie"])
    words.append(noun if num == "one" else noun + "s")
    words.append(rng.choice(WITH))
    words.append(tops[0])
    if len(tops) == 2:
        words.append(rng.choice(JOIN))
        words.append(tops[1])
    if neg is not None:
        words.append(rng.choice(NEG).format(neg))
    return " ".join(words)


def all_orders():
    orders = []
    for num in NUMS:
        for size in SIZES:
            tops_choices = [[t] for t in TOPS] + [[a, b] for a in TOPS for b in TOPS if a != b]
            for tops in tops_choices:
                for neg in [None] + TOPS:
                    if neg in tops:
                        continue
                    orders.append((num, size, tops, neg))
    return orders


def main():
    rng = random.Random(20211)
    orders = all_orders()
    rng.shuffle(orders)
    golden = orders[:16]
    heldout = orders[16:76]
    # Unlabeled utterances may repeat an order with a different surface form.
    unlabeled = [rng.choice(orders) for _ in range(60)]

    # The golden targets must mention every terminal so the trained scorer
    # can score the whole trie vocabulary.
    seen = {tok for o in golden for tok in canonical(o).split()}
    missing = set(NUMS + SIZES + TOPS + ["no"]) - seen
    assert not missing, missing

    with open("golden.jsonl", "w") as f:
        for o in golden:
            f.write(json.dumps({"source": utterance(o, rng), "target": canonical(o), "task": "parse"}) + "\n")
    with open("heldout.jsonl", "w") as f:
        for o in heldout:
            f.write(json.dumps({"source": utterance(o, rng), "target": canonical(o), "task": "parse"}) + "\n")
    with open("unlabeled.txt", "w") as f:
        for o in unlabeled:
            f.write(utterance(o, rng) + "\n")
    with open("paraphrases.jsonl", "w") as f:
        for o in golden[:8]:
            original = utterance(o, rng)
            for _ in range(2):
                f.write(json.dumps({"original": original, "paraphrase": utterance(o, rng)}) + "\n")


if __name__ == "__main__":
    main()
