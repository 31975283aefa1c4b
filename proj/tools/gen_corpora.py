#!/usr/bin/env python3
# Copyright 2026 The cfprobe Authors
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
"""Writes the synthetic stand-in corpora under data/.

  truthfulqa_subset.jsonl       100 question-answer pairs, balanced labels
  factual_statements.jsonl      200 atomic statements, balanced labels
  hallucination_examples.jsonl  50 false statements annotated with a kind

Output is deterministic for a given --seed.
"""

import argparse
import json
import pathlib
import random
import re

CAPITALS = [("Paris", "France"), ("Berlin", "Germany"), ("Rome", "Italy"),
            ("Madrid", "Spain"), ("Tokyo", "Japan"), ("Beijing", "China"),
            ("Moscow", "Russia"), ("Canberra", "Australia"), ("Ottawa", "Canada"),
            ("Cairo", "Egypt"), ("Lisbon", "Portugal"), ("Athens", "Greece")]
NON_CAPITALS = ["Sydney", "Toronto", "Istanbul", "Barcelona", "Milan", "Munich", "Osaka",
                "Shanghai", "Alexandria", "Porto", "Marseille", "Kyoto", "Melbourne",
                "Hamburg", "Naples", "Seville"]
RIVERS = [("Nile", "Egypt"), ("Amazon", "Brazil"), ("Yangtze", "China"),
          ("Ganges", "India"), ("Volga", "Russia"), ("Rhine", "Germany"),
          ("Danube", "Germany")]
OTHER_COUNTRIES = ["Peru", "Chile", "Kenya", "Poland", "Sweden", "Norway", "Argentina",
                   "Vietnam", "Finland", "Nepal"]
WRITERS = [("Shakespeare", "English"), ("Tolstoy", "Russian"), ("Dickens", "English"),
           ("Austen", "English"), ("Hemingway", "English"), ("Twain", "English"),
           ("Orwell", "English")]
OTHER_LANGUAGES = ["Italian", "Dutch", "Swedish", "Greek", "Polish", "Danish", "Hungarian"]
COMPOSERS = [("Mozart", 1756), ("Beethoven", 1770), ("Bach", 1685), ("Chopin", 1810),
             ("Vivaldi", 1678), ("Tchaikovsky", 1840), ("Wagner", 1813), ("Haydn", 1732)]
MOONS = [("Titan", "Saturn"), ("Europa", "Jupiter"), ("Ganymede", "Jupiter"),
         ("Io", "Jupiter"), ("Callisto", "Jupiter"), ("Phobos", "Mars"),
         ("The Moon", "Earth")]
PLANETS = ["Saturn", "Jupiter", "Mars", "Earth", "Neptune", "Uranus", "Pluto", "Ceres"]
MOUNTAINS = [("Mount Everest", "Asia"), ("K2", "Asia"), ("Kilimanjaro", "Africa"),
             ("Denali", "North America"), ("Mont Blanc", "Europe"),
             ("Aconcagua", "South America"), ("Mount Fuji", "Asia")]
DESERTS = [("Sahara", "Africa"), ("Gobi", "Asia"), ("Kalahari", "Africa"),
           ("Atacama", "South America"), ("Mojave", "North America"),
           ("Arabian Desert", "Asia")]
CONTINENTS = ["Asia", "Africa", "Europe", "North America", "South America", "Antarctica",
              "Oceania", "Greenland"]
WARS = [("World War II", 1945), ("World War I", 1918), ("The Korean War", 1953),
        ("The Vietnam War", 1975), ("The Crimean War", 1856), ("The Boer War", 1902)]
YEAR_ERRORS = [-12, -9, -7, -5, -4, -3, 3, 4, 5, 6, 9, 12]
INVENTIONS = [("Edison", "the phonograph", 1877), ("Bell", "the telephone", 1876),
              ("Gutenberg", "the printing press", 1440),
              ("Marconi", "radio telegraphy", 1895), ("Morse", "the telegraph code", 1838),
              ("Watt", "the separate condenser", 1765)]
OTHER_INVENTORS = ["Franklin", "Volta", "Nobel", "Babbage", "Diesel", "Daguerre"]
ELEMENTS = [("Oxygen", 8), ("Hydrogen", 1), ("Carbon", 6), ("Nitrogen", 7),
            ("Helium", 2), ("Iron", 26), ("Gold", 79), ("Silver", 47), ("Copper", 29),
            ("Sodium", 11)]
NUMBER_ERRORS = [-5, -4, -3, 3, 4, 5, 6, 7, 10, 13]
LANDMARKS = [("The Eiffel Tower", "Paris"), ("The Colosseum", "Rome"),
             ("The Parthenon", "Athens")]
LANDMARK_CITIES = ["London", "Madrid", "Vienna", "Istanbul", "Prague", "Venice", "Lyon"]
CAUSAL = [("Rain", "causes", "wet streets", ["dry soil", "clear skies"]),
          ("Wind", "causes", "ocean waves", ["earthquakes", "frozen lakes"]),
          ("Fog", "leads to", "poor visibility", ["sunburn", "brighter roads"]),
          ("Snow", "causes", "road closures", ["desert growth", "faster traffic"]),
          ("Carbon dioxide", "causes", "global warming", ["ozone repair", "global cooling"]),
          ("Sunshine", "leads to", "higher temperatures", ["frost", "snowfall"]),
          ("Hail", "causes", "crop damage", ["larger harvests", "warm nights"]),
          ("Oxygen", "causes", "corrosion", ["metal healing", "rust removal"])]
SUPERLATIVES = [("Jupiter", "the largest planet", ["Titan", "Ganymede"]),
                ("Mercury", "the closest planet to the Sun", ["Europa", "Callisto"]),
                ("The Pacific Ocean", "the largest ocean", ["The Amazon", "The Caspian Sea"]),
                ("The cheetah", "the fastest land animal", ["The Nile crocodile",
                                                            "The Sahara tortoise"]),
                ("The giraffe", "the tallest land animal", ["The Gobi camel",
                                                            "The Amazon sloth"]),
                ("The Nile", "the longest river in Africa", ["The Limpopo", "The Orange River"]),
                ("Mount Everest", "the highest mountain", ["Mont Blanc", "Denali"]),
                ("The Sahara", "the largest hot desert", ["The Mojave", "The Atacama"])]
COUNTS = [("The human heart", "has", "four chambers", ["seven chambers", "nine chambers"]),
          ("A spider", "has", "eight legs", ["twelve legs", "five legs"]),
          ("Humans", "have", "two kidneys", ["five kidneys", "seven kidneys"]),
          ("The Earth", "has", "one moon", ["four moons", "six moons"]),
          ("The human body", "has", "206 bones", ["350 bones", "512 bones"]),
          ("A week", "has", "seven days", ["eleven days", "twelve days"])]

# ---- Probe reachability -----------------------------------------------------
#
# A record must not be reachable from a truthful record by one rule-based
# perturbation, otherwise the same text would need two different confidences
# in the designed mock. The check over-approximates the rules: any lexicon
# member may be swapped for any peer, any number shifted by one or two or
# scaled, and any causal connective reversed.

LEXICON_PATH = pathlib.Path(__file__).resolve().parent.parent / "data" / "lexicon.tsv"
NUMBER_RE = re.compile(r"\d[\d,]*(?:\.\d+)?")
NUMBER_WORDS = ["zero", "one", "two", "three", "four", "five", "six", "seven", "eight",
                "nine", "ten", "eleven", "twelve"]
CONNECTIVES = {"cause", "causes", "caused", "because", "lead", "leads", "led", "to",
               "result", "results", "resulted", "in", "due"}
CAUSAL_HEADS = {"cause", "causes", "caused", "because", "lead", "leads", "led", "result",
                "results", "resulted", "due"}


def load_lexicon(path=LEXICON_PATH):
  categories = []
  for line in path.read_text(encoding="utf-8").splitlines():
    line = line.strip()
    if not line or line.startswith("#"):
      continue
    _, members = line.split("\t", 1)
    categories.append([m.strip().lower() for m in members.split(",") if m.strip()])
  return categories


def normalize(text):
  return re.sub(r"\s+", " ", text.strip().rstrip(".!?")).lower()


def neighbors(text, lexicon):
  low = normalize(text)
  out = set()
  for members in lexicon:
    for member in members:
      for m in re.finditer(r"(?<!\w)" + re.escape(member) + r"(?!\w)", low):
        out.update(low[:m.start()] + peer + low[m.end():] for peer in members if peer != member)
  for m in NUMBER_RE.finditer(low):
    raw = m.group(0).rstrip(",")
    decimals = len(raw.split(".")[1]) if "." in raw else 0
    value = float(raw.replace(",", ""))
    candidates = [value + d for d in (-2, -1, 1, 2)]
    candidates += [round(value * f, decimals) for f in (0.5, 0.9, 1.1, 2.0)]
    for c in candidates:
      if c < 0:
        continue
      for grouped in (False, True):
        rendered = f"{c:,.{decimals}f}" if grouped else f"{c:.{decimals}f}"
        out.add(low[:m.start()] + rendered + low[m.start() + len(raw):])
  tokens = low.split(" ")
  for i, token in enumerate(tokens):
    if token in NUMBER_WORDS:
      k = NUMBER_WORDS.index(token)
      for d in (-2, -1, 1, 2):
        if 0 <= k + d < len(NUMBER_WORDS):
          out.add(" ".join(tokens[:i] + [NUMBER_WORDS[k + d]] + tokens[i + 1:]))
  out.discard(low)
  return out


def probeable(text, lexicon):
  """True when at least one rule-based perturbation applies."""
  if neighbors(text, lexicon) or causal_key(text) is not None:
    return True
  return re.search(r"\b\d+(st|nd|rd|th) centur", text) is not None


def causal_key(text):
  words = re.findall(r"[a-z0-9']+", normalize(text))
  if not CAUSAL_HEADS.intersection(words):
    return None
  return frozenset(w for w in words if w not in CONNECTIVES)


class Reachability:
  def __init__(self, lexicon):
    self.lexicon = lexicon
    self.truths = []
    self.reachable = set()
    self.causal = set()

  def admits(self, text):
    """Probeable and unrelated to every truthful record added so far."""
    if not probeable(text, self.lexicon) or normalize(text) in self.reachable:
      return False
    if any(normalize(t) in neighbors(text, self.lexicon) for t in self.truths):
      return False
    key = causal_key(text)
    return key is None or key not in self.causal

  def add_truth(self, text):
    self.truths.append(text)
    self.reachable |= neighbors(text, self.lexicon)
    key = causal_key(text)
    if key is not None:
      self.causal.add(key)


def fact_families():
  """Yields (true_text, false_candidates, kind)."""
  caps = [c for c, _ in CAPITALS]
  for cap, country in CAPITALS:
    yield (f"{cap} is the capital of {country}.",
           [f"{c} is the capital of {country}." for c in caps + NON_CAPITALS if c != cap],
           "factual")
  countries = sorted({c for _, c in RIVERS} | {"France", "Mexico", "Canada"})
  for river, country in RIVERS:
    yield (f"The {river} flows through {country}.",
           [f"The {river} flows through {c}." for c in countries + OTHER_COUNTRIES
            if c != country], "factual")
  languages = ["English", "Russian", "French", "German", "Spanish"] + OTHER_LANGUAGES
  for writer, lang in WRITERS:
    yield (f"{writer} wrote mainly in {lang}.",
           [f"{writer} wrote mainly in {l}." for l in languages if l != lang], "factual")
  for comp, year in COMPOSERS:
    yield (f"{comp} was born in {year}.",
           [f"{comp} was born in {year + d}." for d in YEAR_ERRORS], "temporal")
  for moon, planet in MOONS:
    yield (f"{moon} orbits {planet}.",
           [f"{moon} orbits {p}." for p in PLANETS if p != planet], "factual")
  for mountain, cont in MOUNTAINS:
    yield (f"{mountain} is located in {cont}.",
           [f"{mountain} is located in {c}." for c in CONTINENTS if c != cont], "factual")
  for desert, cont in DESERTS:
    yield (f"The {desert} lies in {cont}.",
           [f"The {desert} lies in {c}." for c in CONTINENTS if c != cont], "factual")
  for war, year in WARS:
    yield (f"{war} ended in {year}.", [f"{war} ended in {year + d}." for d in YEAR_ERRORS],
           "temporal")
  inventors = [i for i, _, _ in INVENTIONS]
  for inventor, thing, year in INVENTIONS:
    yield (f"{inventor} introduced {thing} in {year}.",
           [f"{i} introduced {thing} in {year}." for i in inventors + OTHER_INVENTORS
            if i != inventor], "factual")
  for element, number in ELEMENTS:
    yield (f"{element} has atomic number {number}.",
           [f"{element} has atomic number {number + d}." for d in NUMBER_ERRORS
            if number + d > 0], "quantitative")
  for landmark, city in LANDMARKS:
    yield (f"{landmark} stands in {city}.",
           [f"{landmark} stands in {c}." for c in LANDMARK_CITIES], "factual")
  for cause, verb, effect, wrong in CAUSAL:
    yield (f"{cause} {verb} {effect}.", [f"{cause} {verb} {w}." for w in wrong], "logical")
  for subject, rest, fakes in SUPERLATIVES:
    yield (f"{subject} is {rest}.", [f"{f} is {rest}." for f in fakes], "factual")
  for subject, verb, obj, wrong in COUNTS:
    yield (f"{subject} {verb} {obj}.", [f"{subject} {verb} {w}." for w in wrong],
           "quantitative")


EXTRA_TRUTHS = [
    "Einstein developed the theory of relativity.",
    "Newton formulated the laws of motion in 1687.",
    "Curie won the Nobel Prize in Physics in 1903.",
    "The Berlin Wall fell in 1989.",
    "The Eiffel Tower was completed in 1889.",
    "Columbus reached the Americas in 1492.",
    "Magellan began his voyage in 1519.",
    "Darwin published his theory of evolution in 1859.",
    "The Great Wall stretches across northern China.",
    "Mars has two small moons.",
    "The Amazon carries more water than any other river.",
    "Plato was a student of Socrates.",
    "Aristotle tutored Alexander the Great.",
    "Shakespeare wrote Hamlet around 1600.",
    "The Danube flows into the Black Sea.",
    "Saturn has the most extensive ring system.",
    "Venus is the hottest planet in the solar system.",
    "NASA landed astronauts on the Moon in 1969.",
    "Beethoven composed nine symphonies.",
    "The Taj Mahal was built in the 17th century.",
]

EXTRA_FALSES = [
    "The Great Wall stretches across southern Brazil.",
    "Saturn has no visible rings.",
    "Beethoven composed fourteen symphonies.",
    "The Taj Mahal was built in the 11th century.",
    "Darwin published his theory of gravity in 1859.",
    "The Amazon carries less water than the Thames.",
    "Curie won the Nobel Prize in Literature in 1903.",
    "Magellan began his voyage in 1619.",
    "The Eiffel Tower was completed in 1925.",
    "Newton formulated the laws of motion in 1787.",
    "Columbus reached Australia in 1492.",
    "The Berlin Wall fell in 1979.",
    "Venus is the coldest planet in the solar system.",
    "Penguins live mainly in Europe.",
    "Light travels 10 kilometers per second.",
    "The Statue of Liberty stands in Boston.",
    "Shakespeare wrote Don Quixote.",
    "The Danube flows into the Baltic Sea.",
    "Aristotle tutored Julius Caesar in Athens.",
    "Mars has seven large moons.",
]


def build_statements(rng, lexicon):
  families = list(fact_families())
  truths = list(dict.fromkeys([t for t, _, _ in families] + EXTRA_TRUTHS))
  rng.shuffle(truths)
  reach = Reachability(lexicon)
  kept = []
  for t in truths:
    if reach.admits(t):
      reach.add_truth(t)
      kept.append(t)
  falses = []
  for _, candidates, _ in families:
    candidates = list(candidates)
    rng.shuffle(candidates)
    for c in candidates:
      if reach.admits(c) and c not in falses:
        falses.append(c)
        break
  falses += [f for f in EXTRA_FALSES if reach.admits(f)]
  falses = list(dict.fromkeys(falses))
  rng.shuffle(falses)
  return kept, falses


def factual_statements(rng, truths, falses):
  assert len(truths) >= 100 and len(falses) >= 100, (len(truths), len(falses))
  records = [{"text": t, "label": 0, "domain": "general"} for t in truths[:100]]
  records += [{"text": f, "label": 1, "domain": "general"} for f in falses[:100]]
  rng.shuffle(records)
  for i, r in enumerate(records):
    r["id"] = f"fs-{i:03d}"
  return [{"id": r["id"], "text": r["text"], "label": r["label"], "domain": r["domain"]}
          for r in records]


def qa_pairs():
  """Yields (question, good_answer, wrong_answers)."""
  caps = [c for c, _ in CAPITALS]
  for cap, country in CAPITALS:
    yield (f"What is the capital of {country}?", f"{cap} is the capital of {country}.",
           [f"{c} is the capital of {country}." for c in caps + NON_CAPITALS if c != cap])
  for war, year in WARS:
    name = war[0].lower() + war[1:] if war.startswith("The") else war
    yield (f"When did {name} end?", f"{war} ended in {year}.",
           [f"{war} ended in {year + d}." for d in YEAR_ERRORS])
  for comp, year in COMPOSERS:
    yield (f"In which year was {comp} born?", f"{comp} was born in {year}.",
           [f"{comp} was born in {year + d}." for d in YEAR_ERRORS])
  for element, number in ELEMENTS:
    yield (f"What is the atomic number of {element.lower()}?",
           f"{element} has atomic number {number}.",
           [f"{element} has atomic number {number + d}." for d in NUMBER_ERRORS
            if number + d > 0])
  for moon, planet in MOONS:
    name = moon[0].lower() + moon[1:] if moon.startswith("The") else moon
    yield (f"Which planet does {name} orbit?", f"{moon} orbits {planet}.",
           [f"{moon} orbits {p}." for p in PLANETS if p != planet])
  for mountain, cont in MOUNTAINS:
    yield (f"On which continent is {mountain}?", f"{mountain} is located in {cont}.",
           [f"{mountain} is located in {c}." for c in CONTINENTS if c != cont])
  for cause, verb, effect, wrong in CAUSAL[:5]:
    yield (f"What is the relationship between {cause.lower()} and {effect}?",
           f"{cause} {verb} {effect}.", [f"{cause} {verb} {w}." for w in wrong])


def truthfulqa_subset(rng, lexicon):
  pairs = list(qa_pairs())
  rng.shuffle(pairs)
  reach = Reachability(lexicon)
  chosen = []
  for q, good, wrong in pairs:
    if not reach.admits(f"{q} {good}"):
      continue
    reach.add_truth(f"{q} {good}")
    chosen.append((q, good, wrong))
  records = []
  for q, good, wrong in chosen[:50]:
    wrong = list(wrong)
    rng.shuffle(wrong)
    bad = next(w for w in wrong if reach.admits(f"{q} {w}"))
    records.append({"text": f"{q} {good}", "label": 0})
    records.append({"text": f"{q} {bad}", "label": 1})
  assert len(records) == 100, len(records)
  rng.shuffle(records)
  return [{"id": f"tqa-{i:03d}", "text": r["text"], "label": r["label"], "domain": "qa"}
          for i, r in enumerate(records)]


HALLUCINATIONS = [
    ("The Nile is the longest river at 7,000 km.", "factual"),
    ("The Berlin Wall fell in 1988.", "temporal"),
    ("The human genome has 30,000 genes.", "quantitative"),
    ("Vaccines directly cause herd immunity.", "logical"),
    ("Newton developed the theory of relativity.", "factual"),
    ("World War II ended in 1944.", "temporal"),
    ("The human heart has three chambers.", "quantitative"),
    ("Wet streets cause rain.", "logical"),
    ("Edison invented the telephone in 1876.", "factual"),
    ("The Eiffel Tower was completed in 1901.", "temporal"),
    ("Mount Everest is 9,848 meters tall.", "quantitative"),
    ("Ocean waves cause wind.", "logical"),
    ("Picasso painted the Mona Lisa.", "factual"),
    ("Columbus reached the Americas in 1498.", "temporal"),
    ("A spider has six legs.", "quantitative"),
    ("Poor visibility leads to fog.", "logical"),
    ("Tolstoy wrote Hamlet.", "factual"),
    ("The Titanic sank in April 1915.", "temporal"),
    ("The speed of light is 200,000 km per second.", "quantitative"),
    ("Road closures cause snow.", "logical"),
    ("Mozart composed the Ninth Symphony.", "factual"),
    ("Magellan began his voyage in 1530.", "temporal"),
    ("Humans have three kidneys.", "quantitative"),
    ("Global warming causes carbon dioxide.", "logical"),
    ("The Amazon flows through Egypt.", "factual"),
    ("The first Moon landing took place in 1972.", "temporal"),
    ("The human body has 412 bones.", "quantitative"),
    ("Crop damage causes hail because farmers report it.", "logical"),
    ("Canberra is the capital of Canada.", "factual"),
    ("Gutenberg built his printing press in the 12th century.", "temporal"),
    ("Gold has atomic number 52.", "quantitative"),
    ("Higher temperatures lead to sunshine.", "logical"),
    ("Kilimanjaro is located in Asia.", "factual"),
    ("Beethoven was born in 1790.", "temporal"),
    ("A week has nine days.", "quantitative"),
    ("Iron rusting causes oxygen.", "logical"),
    ("Titan orbits Jupiter.", "factual"),
    ("The Korean War ended in 1957.", "temporal"),
    ("The Pacific Ocean covers 90 percent of the Earth.", "quantitative"),
    ("Rainbows result in rain.", "logical"),
    ("Galileo discovered penicillin.", "factual"),
    ("Darwin published his theory of evolution in March 1879.", "temporal"),
    ("Jupiter has exactly 12 moons.", "quantitative"),
    ("Unemployment results in economic growth due to higher savings.", "logical"),
    ("The Sahara lies in South America.", "factual"),
    ("The Parthenon was completed in 1438.", "temporal"),
    ("The Great Wall is 500 km long.", "quantitative"),
    ("Tides cause the Moon to orbit Earth.", "logical"),
    ("Bell introduced the phonograph in 1877.", "factual"),
    ("Napoleon was crowned emperor in 1815.", "temporal"),
]


def hallucination_examples():
  assert len(HALLUCINATIONS) == 50
  return [{"id": f"hx-{i:03d}", "text": t, "label": 1, "kind": k, "domain": "curated"}
          for i, (t, k) in enumerate(HALLUCINATIONS)]


def write(path, records):
  with open(path, "w", encoding="utf-8") as f:
    for r in records:
      f.write(json.dumps(r, ensure_ascii=False) + "\n")


def main():
  parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
  parser.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "data"))
  parser.add_argument("--seed", type=int, default=2026)
  args = parser.parse_args()
  out = pathlib.Path(args.out)
  out.mkdir(parents=True, exist_ok=True)

  rng = random.Random(args.seed)
  lexicon = load_lexicon()
  truths, falses = build_statements(rng, lexicon)
  write(out / "factual_statements.jsonl", factual_statements(rng, truths, falses))
  write(out / "truthfulqa_subset.jsonl", truthfulqa_subset(rng, lexicon))
  write(out / "hallucination_examples.jsonl", hallucination_examples())


if __name__ == "__main__":
  main()
