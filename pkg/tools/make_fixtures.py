"""Regenerate the bundled snapshot corpus under tests/fixtures/corpus.

Writes 60 store-like HTML pages, the manifest, the rule set, and
``injected.jsonl``: the exact raw strings planted in each page, which
extraction must recover verbatim.

    python3 tools/make_fixtures.py
"""

import json
import random
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "corpus"

GAMES = ["Adventure", "Adventure", "Puzzle", "Action", "Word", "Racing", "Card",
         "Casual", "Strategy", "Role Playing"]
OTHERS = ([("Business", 9), ("Education", 8), ("Tools", 8), ("Communication", 7),
           ("Productivity", 6), ("Family", 5), ("Finance", 4), ("Health & Fitness", 3)])

WORDS = ["Nova", "Pixel", "Quick", "Bright", "Lumen", "Atlas", "Echo", "Orbit", "Maple",
         "Cobalt", "Zen", "Vector", "Harbor", "Ember", "Summit", "Drift", "Falcon", "Prism"]
NOUNS = ["Notes", "Ledger", "Quest", "Chat", "Tasks", "Scanner", "Tutor", "Saga", "Mail",
         "Budget", "Fit", "Words", "Cards", "Racer", "Kids", "Office", "Map", "Sync"]
COMPANIES = ["Brightline Labs", "Orbit Apps Ltd.", "Harbor Soft", "Maple & Co", "Cobalt Studio",
             "Summit Mobile GmbH", "Prism Interactive", "Vector Works"]
PEOPLE = ["Ada Nowak", "Jonas Berg", "Mila Kovac", "Tomasz Lis", "Ines Duarte"]

CONTENT = ["Everyone", "Everyone", "3+", "3+", "7+", "Teen", "12+", "Everyone 10+", "16+",
           "Mature 17+", "18+", "Adults Only 18+", "PEGI 3", "Everyone", "3+", "12+"]
OS = ["4.1 and up", "4.4 and up", "5.0 and up", "Varies with device", "6.0 and up", "8.0",
      "4.0.3 and up", "7.1 and up"]
PRICES = ["$0.99 - $99.99 per item", "$1.49 per item", "$0.99 - $4.99 per item", "$2.99",
          "$1.99 - $349.99 per item", "$4.99 - $19.99 per item"]
BUCKETS = ["100+", "500+", "1,000+", "5,000+", "10,000+", "50,000+", "100,000+", "500,000+",
           "1,000,000+", "5,000,000+", "10,000,000+", "50,000,000+", "100,000,000+"]
MONTHS = ["January", "February", "March", "April", "May", "June", "July", "August",
          "September", "October", "November", "December"]

RULES = [
    {"field": "name", "technique": "SELECTOR", "expression": "h1[itemprop=name] > span", "required": True},
    {"field": "developer", "technique": "SELECTOR", "expression": "div.meta a.dev", "required": True},
    {"field": "category", "technique": "SELECTOR", "expression": "div.meta a[itemprop=genre]", "required": True},
    {"field": "review_count", "technique": "SELECTOR", "expression": ".rating-box .reviews > span", "required": True},
    {"field": "rating_value", "technique": "SELECTOR", "expression": "div.rating-box .score", "required": True},
    {"field": "download_count", "technique": "PATTERN", "expression": r"([0-9][0-9,]*)\+ downloads?",
     "capture_group": 1, "required": True},
    {"field": "date_modified", "technique": "PATTERN",
     "expression": r"Updated</div>\s*<span class=\"value\">([A-Z][a-z]+ [0-9]{1,2}, [0-9]{4})</span>",
     "capture_group": 1, "required": True},
    {"field": "content_rating", "technique": "PATTERN",
     "expression": r"Content Rating</div>\s*<span class=\"value\">(Rated for )?([^<]+)</span>",
     "capture_group": 2, "required": True},
    {"field": "price_range", "technique": "PATTERN",
     "expression": r"In-app Products</div>\s*<span class=\"value\">([^<]+)</span>",
     "capture_group": 1, "required": False},
    {"field": "os_requirement", "technique": "PATTERN",
     "expression": r"Requires Android</div>\s*<span class=\"value\">([^<]+)</span>",
     "capture_group": 1, "required": True},
    {"field": "url", "technique": "SELECTOR", "expression": "@source", "required": True},
]

PAGE = """<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>{title} - Apps on Google Play</title>
<script>window.cfg = {{"tpl": "<div class='score'>0.0</div>", "n": 1}};</script>
<style>.score {{ font-weight: bold }}</style>
</head>
<body>
<div class="details" id="main">
<h1 class="title" itemprop="name"><span>{name_html}</span></h1>
<div class="meta">
<a class="link dev" href="/store/apps/dev?id={dev_slug}">{developer_html}</a>
<a class="link" itemprop="genre" href="/store/apps/category/{cat_slug}">{category_html}</a>
</div>
<div class="rating-box">
<div class="score big" aria-label="Rated {rating} stars out of five stars">{rating}</div>
<span class="reviews"><span aria-label="{reviews} ratings">{reviews}</span> total</span>
</div>
{blurb}
</div>
<div class="additional">
<div class="row"><div class="label">Updated</div>
<span class="value">{date}</span></div>
<div class="row"><div class="label">Installs</div>
<span class="value">{downloads} downloads</span></div>
<div class="row"><div class="label">Requires Android</div>
<span class="value">{os}</span></div>
<div class="row"><div class="label">Content Rating</div>
<span class="value">{content_prefix}{content}</span></div>
{price_row}</div>
<div class="similar">
<h2>Similar apps</h2>
<div class="card"><span class="name">Other App</span><div class="score">3.1</div><p>5,000+ downloads</div>
</div>
</body>
</html>
"""

BLURBS = [
    "<p>Fast and simple.<p>Works offline.<br>No account needed.",
    "<p>Made for everyday use.</p>",
    "<div class=\"desc\"><b>New:</b> dark mode</span></div>",
    "<ul><li>Sync<li>Backup<li>Share</ul>",
    "",
]


def esc(text):
    return text.replace("&", "&amp;").replace("<", "&lt;")


def slug(text):
    return "".join(c.lower() if c.isalnum() else "_" for c in text).strip("_")


def build(rng):
    categories = GAMES + [c for c, n in OTHERS for _ in range(n)]
    assert len(categories) == 60 and len(GAMES) == 10
    rng.shuffle(categories)

    # one app owns the largest bucket; a fixed subset shares 4.5
    top_app = 17
    forty_five = {0, 5, 11, 23, 34, 41, 52}
    names = set()
    apps = []
    for i, category in enumerate(categories):
        while True:
            name = f"{rng.choice(WORDS)} {rng.choice(NOUNS)}"
            if name not in names:
                names.add(name)
                break
        person = i % 6 == 2
        developer = rng.choice(PEOPLE) if person else rng.choice(COMPANIES)
        kind = "person" if person else ("organization" if i % 3 == 0 else None)
        dev_url = None if i % 4 == 1 else f"https://dev.example.com/{slug(developer)}"
        if kind is None and dev_url is not None and i % 8 == 4:
            dev_url = None
        if i in forty_five:
            rating = "4.5"
        elif i == 9:
            rating = "5.0"
        else:
            rating = f"{rng.choice([3, 4])}.{rng.choice([0, 1, 2, 3, 4, 6, 7, 8, 9])}"
        reviews = f"{rng.randrange(0, 3_000_000):,}" if i % 5 else str(rng.randrange(0, 900))
        downloads = "1,000,000,000+" if i == top_app else rng.choice(BUCKETS)
        date = f"{MONTHS[rng.randrange(12)]} {rng.randrange(1, 29)}, {rng.choice([2017, 2018, 2019])}"
        content = "Fantasy Violence" if i == 29 else CONTENT[i % len(CONTENT)]
        price = None if i % 3 == 1 else rng.choice(PRICES)
        apps.append({
            "i": i, "name": name, "developer": developer, "kind": kind, "dev_url": dev_url,
            "category": category, "rating": rating, "reviews": reviews, "downloads": downloads,
            "date": date, "os": OS[i % len(OS)], "content": content, "price": price,
            "pkg": f"com.fixture.{slug(name)}",
        })
    # record #1 of the manifest carries every optional part
    first = apps[top_app - 1]
    if first["category"] not in GAMES:
        donor = next(a for a in apps if a["category"] in GAMES)
        donor["category"], first["category"] = first["category"], donor["category"]
    first.update(price="$0.99 - $99.99 per item", kind="person", developer=PEOPLE[0],
                 dev_url="https://dev.example.com/first")
    return apps, first


def main():
    rng = random.Random(20190507)
    apps, first = build(rng)
    (OUT / "snapshots").mkdir(parents=True, exist_ok=True)
    injected = {}
    for a in apps:
        sid = f"s{a['i'] + 1:03d}"
        page = PAGE.format(
            title=esc(a["name"]), name_html=esc(a["name"]), developer_html=esc(a["developer"]),
            dev_slug=slug(a["developer"]), category_html=esc(a["category"]),
            cat_slug=slug(a["category"]).upper(), rating=a["rating"], reviews=a["reviews"],
            blurb=BLURBS[a["i"] % len(BLURBS)], date=a["date"], downloads=a["downloads"],
            os=a["os"], content=a["content"],
            content_prefix="Rated for " if a["content"].endswith("+") and a["i"] % 2 else "",
            price_row=("" if a["price"] is None else
                       '<div class="row"><div class="label">In-app Products</div>\n'
                       f'<span class="value">{a["price"]}</span></div>\n'),
        )
        (OUT / "snapshots" / f"{sid}.html").write_text(page, encoding="utf-8")
        url = f"https://play.google.com/store/apps/details?id={a['pkg']}&hl=en_US"
        injected[sid] = {
            "snapshot_id": sid, "url": url, "name": a["name"], "developer": a["developer"],
            "category": a["category"], "review_count": a["reviews"], "rating_value": a["rating"],
            "download_count": a["downloads"], "date_modified": a["date"],
            "content_rating": a["content"], "price_range": a["price"], "os_requirement": a["os"],
            "developer_kind": a["kind"], "developer_url": a["dev_url"],
        }

    order = [f"s{a['i'] + 1:03d}" for a in apps]
    first_sid = f"s{first['i'] + 1:03d}"
    rest = [s for s in order if s != first_sid]
    rng.shuffle(rest)
    order = [first_sid] + rest

    lines = ["# snapshot_id\tsource_url\tpath\t[developer kind]\t[developer url]"]
    for sid in order:
        rec = injected[sid]
        cols = [sid, rec["url"], f"snapshots/{sid}.html"]
        if rec["developer_kind"] or rec["developer_url"]:
            cols.append(rec["developer_kind"] or "organization")
            if rec["developer_kind"] is None:
                rec["developer_kind"] = "organization"
        if rec["developer_url"]:
            cols.append(rec["developer_url"])
        lines.append("\t".join(cols))
    (OUT / "manifest.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")

    with open(OUT / "rules.jsonl", "w", encoding="utf-8") as fh:
        fh.write("# fixture store layout\n")
        for rule in RULES:
            fh.write(json.dumps(rule) + "\n")
    with open(OUT / "injected.jsonl", "w", encoding="utf-8") as fh:
        for sid in order:
            fh.write(json.dumps(injected[sid], ensure_ascii=False, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
