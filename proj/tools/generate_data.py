#!/usr/bin/env python3
"""Writes the synthetic fixtures under tests/fixtures and the demo under data/demo.

Output is a pure function of the seeds below; rerunning rewrites identical files.
"""
import argparse
import datetime as dt
import json
import os
import random
import shutil

EPOCH = dt.datetime(1970, 1, 1, tzinfo=dt.timezone.utc)

FUNCTION_WORDS = """the a an and or but of to in on at for with by from as is are was were be been has have had
do does did not no this that these those it its they them their we our you your i my me he she his her
will would can could should may might must so just very also than then there here what which who how why
when all any some more most other such only own same too about into over after before again""".split()

GENERAL_WORDS = """people time year day week world life hand part child eye woman place work case point number group
problem fact money story lot right study book job word business side kind head house service friend father
power hour game line end member law car city community name team minute idea body information back parent face
others level office door person art war history party result change morning reason research girl guy moment air
teacher force education food music market phone love weather road train school river garden coffee beach movie
football dinner summer winter holiday ticket family street price season shop bank paper tv news video photo
good new old great big small high long little important young large local late early sure free happy simple
easy hard strong real best better true false full clear open short possible ready special public happy
make know think take see come want look use find give tell work call try ask need feel become leave put mean
keep let begin seem help talk turn start show hear play run move like live believe hold bring happen write
provide sit stand lose pay meet include continue set learn lead understand watch follow stop create speak read
spend grow offer remember love consider appear buy wait serve die send expect build stay fall cut reach kill
remain suggest raise pass sell require report decide pull vote""".split()

MEDICAL_WORDS = """virus infection mosquito mosquitoes microcephaly fever vaccine outbreak transmission pathogen dengue
symptom symptoms rash pregnant pregnancy fetus fetal birth defect defects congenital neurological guillain barre
syndrome aedes aegypti albopictus vector larvae larvicide pyriproxyfen insecticide pesticide epidemic pandemic
incidence prevalence surveillance diagnosis serology antibody antibodies immune immunity chikungunya flavivirus
arbovirus sexual semen blood platelet clinical trial cohort prenatal ultrasound brain infant infants neonatal
case cases laboratory confirmed suspected travel advisory endemic tropical disease diseases health ministry
cdc who paho epidemiology epidemiologist public repellent deet bite bites breeding transmitted autochthonous
zika spondweni viremia incubation conjunctivitis arthralgia myalgia headache""".split()


def ts(t):
    return t.strftime("%Y-%m-%dT%H:%M:%SZ")


class Authors:
    def __init__(self, rng, n, start):
        self.rows = []
        profiles = ["Miami, FL", "São Paulo, Brasil", "London", "New York", "Rio de Janeiro, Brazil", "Texas",
                    "somewhere on earth", "Madrid", "Buenos Aires", "England", "", "", "", "", "Mexico City", "USA"]
        for i in range(n):
            kind = rng.choice(["advocate", "advocate", "citizen", "citizen", "citizen", "press"])
            created = start - dt.timedelta(days=rng.randint(20, 3000) if kind != "advocate" else rng.randint(5, 700))
            if kind == "press":
                followers = rng.randint(5000, 900000)
                following = rng.randint(100, 3000)
                statuses = rng.randint(5000, 200000)
            elif kind == "advocate":
                followers = rng.randint(10, 3000)
                following = rng.randint(200, 5000)
                statuses = rng.randint(500, 90000)
            else:
                followers = rng.randint(20, 4000)
                following = rng.randint(30, 2000)
                statuses = rng.randint(50, 30000)
            self.rows.append({
                "id": "u%04d" % i,
                "kind": kind,
                "followers": followers,
                "following": following,
                "statuses": statuses,
                "created": created,
                "profile": rng.choice(profiles),
            })

    def pick(self, rng, kind=None):
        pool = [a for a in self.rows if kind is None or a["kind"] == kind]
        return rng.choice(pool)


RUMORS = {
    "R1": {
        "description": "Zika virus is linked to genetically modified mosquitoes",
        "provenance": "WHO",
        "query": "genetically | GMO",
        "rumor": ["Zika virus is being spread by #GMO mosquitoes funded by Gates",
                  "genetically modified mosquitoes caused the Zika outbreak in Brazil",
                  "the Zika outbreak started right where GMO mosquitoes were released",
                  "GMO mosquitoes are a bioweapon and they are spreading zika",
                  "BIOWEAPON! Zika is being spread by genetically engineered mosquitoes"],
        "clarification": ["genetically modified mosquitoes did not cause Zika, say scientists",
                          "there is no link between GMO mosquitoes and the Zika outbreak",
                          "claims that genetically engineered mosquitoes spread Zika are false",
                          "fact check: the GMO mosquito theory of zika does not hold up"],
        "other": ["Florida votes on release of genetically modified mosquitoes",
                  "the GMO labeling debate continues in congress",
                  "company says its genetically modified mosquitoes reduce dengue",
                  "what do you think about GMO food"],
    },
    "R2": {
        "description": "Zika virus symptoms are similar to seasonal flu",
        "provenance": "WHO",
        "query": "(symptom & (flu | cold)) & (not(rash))",
        "rumor": ["every zika symptom is the same as the flu so relax",
                  "zika is nothing, each symptom is just like a common cold",
                  "the main symptom of zika is like a mild flu, stop the panic",
                  "zika gives you a cold symptom and that is all"],
        "clarification": ["do not confuse a zika symptom with the flu, the risk to pregnant women is real",
                          "a zika symptom may resemble a cold but doctors warn about birth defects",
                          "zika is not just the flu: know each symptom and see a doctor"],
        "other": ["which symptom do you have, flu or cold",
                  "flu season again, every symptom hits hard",
                  "my cold symptom is gone finally"],
    },
    "R3": {
        "description": "Vaccines cause microcephaly in babies",
        "provenance": "WHO",
        "query": "((tdap | MMR | Measles | Mumps | Rubella) & vaccine & microcephaly) | "
                 "(vaccine & (cause | link | relate) & microcephaly)",
        "rumor": ["government document confirms tdap vaccine causes microcephaly",
                  "the vaccine is the real cause of microcephaly, not zika",
                  "MMR vaccine given to pregnant women is the cause of microcephaly",
                  "they hid the link between the rubella vaccine and microcephaly"],
        "clarification": ["no evidence that the vaccine can cause microcephaly, says WHO",
                          "anti-vaccination extremists falsely claim that tdap vaccine causes microcephaly",
                          "doctors confirm there is no link between any vaccine and microcephaly"],
        "other": ["no cure, no vaccine for a virus that scientists believe to cause microcephaly",
                  "race for a zika vaccine as the link to microcephaly grows clearer",
                  "measles vaccine campaign continues while microcephaly cases are studied"],
    },
    "R4": {
        "description": "Pyriproxyfen insecticide causes microcephaly",
        "provenance": "WHO",
        "query": "(montsanto | pesticide | pyriproxyfen | insecticide) & microcephaly",
        "rumor": ["pyriproxyfen pesticide in drinking water is the cause of microcephaly",
                  "argentine and brazilian doctors suspect mosquito insecticide as cause of microcephaly",
                  "it was the pesticide all along, not zika, behind microcephaly",
                  "insecticide in the water supply is causing microcephaly in babies"],
        "clarification": ["no link between pesticide and microcephaly, says health ministry",
                          "pyriproxyfen does not cause microcephaly, scientists find",
                          "WHO: insecticide theory for microcephaly is not supported by evidence"],
        "other": ["state suspends pyriproxyfen use while microcephaly is studied",
                  "pesticide spraying planned in neighborhoods with microcephaly cases"],
    },
    "R5": {
        "description": "Americans are immune to Zika virus",
        "provenance": "Snopes",
        "query": "american & immune",
        "rumor": ["yup and every american is immune to zika, so why fund a response",
                  "good news, the american population is immune to zika virus",
                  "american people are immune to zika, no need to worry"],
        "clarification": ["no, being american does not make you immune to zika",
                          "snopes: the story that american citizens are immune to zika is false",
                          "crazy and dangerous story that the american public is immune to zika"],
        "other": ["american scientists study how the immune system fights zika",
                  "an american lab tests immune response to the new vaccine"],
    },
    "R6": {
        "description": "Coffee as mosquito-repellent to protect against Zika",
        "provenance": "Snopes",
        "query": "((coffee | java | jive) & (repellent | protect)) & mosquito",
        "rumor": ["coffee is a natural mosquito repellent that will protect you from zika",
                  "spread coffee grounds to protect your home from every zika mosquito",
                  "java is the best mosquito repellent, say goodbye to zika",
                  "bring on the cuban coffee, best mosquito repellent ever"],
        "clarification": ["coffee grounds will not protect you from the zika mosquito, use real repellent",
                          "no, coffee is not a mosquito repellent, experts say",
                          "the coffee study only looked at mosquito larvae, it will not protect you"],
        "other": ["cuban coffee and mosquito repellent, ready for the beach",
                  "need coffee and a mosquito net to protect me on this camping trip"],
    },
}

OFF_TOPIC = ["zika cases rise in puerto rico", "cdc issues travel advisory for zika", "olympic athletes worry about zika",
             "first zika case confirmed in the city", "zika fever spreading in the region say officials",
             "how to avoid mosquito bites this summer", "zika funding bill stalls again",
             "aedes mosquitoes found in new counties", "health officials track zika in travelers"]

FOREIGN = {
    "es": ["el virus del zika se propaga en la region", "casos de microcefalia aumentan en brasil",
           "los mosquitos transgenicos causan zika dicen en redes", "el cafe no protege contra el mosquito"],
    "pt": ["casos de zika aumentam no nordeste", "microcefalia e zika preocupam gestantes",
           "mosquito transgenico nao causa zika", "vacina nao causa microcefalia"],
    "fr": ["le virus zika arrive en guyane", "les moustiques et le zika inquietent",
           "pas de lien entre vaccin et microcephalie"],
}

STYLE = {
    "rumor": {
        "openers": ["BREAKING:", "WAKE UP!", "They don't want you to know:", "Shocking!", "Truth:", "", "", "OMG"],
        "tails": ["Share before they delete it!", "Do your research!!", "I knew it!", "We are being lied to!",
                  "Why is nobody talking about this?", "", "Spread the word!!!"],
        "hosts": ["naturalnews.com", "march-against-monsanto.com", "infowars.com", "realstrategy.net",
                  "youtube.com", "facebook.com", "t.co"],
        "emoticons": [":(", ":-(", ""],
        "hashtags": ["#wakeup", "#GMO", "#Zika", "#truth", "#bioweapon", ""],
    },
    "clarification": {
        "openers": ["Fact check:", "Myth:", "Experts say", "Reminder:", "WHO:", "", "Health officials:"],
        "tails": ["Read more from health officials.", "Via @WHO", "Details here.", "Get the facts.", ""],
        "hosts": ["who.int", "cdc.gov", "cnn.com", "bbc.co.uk", "snopes.com", "nytimes.com", "en.wikipedia.org",
                  "bit.ly"],
        "emoticons": [""],
        "hashtags": ["#Zika", "#factcheck", "#ZikaVirus", ""],
    },
    "other": {
        "openers": ["", "", "Hmm", "Today:", "lol"],
        "tails": ["", "thoughts?", "what a week", ""],
        "hosts": ["instagram.com", "paper.li", "twitter.com", "cnn.com", "ow.ly"],
        "emoticons": [":)", ":D", ""],
        "hashtags": ["#zika", "#news", ""],
    },
}

SHORTENED = {
    "t.co": ["naturalnews.com", "infowars.com", "youtube.com"],
    "bit.ly": ["who.int", "cdc.gov", "snopes.com"],
    "ow.ly": ["instagram.com", "paper.li"],
}


class Builder:
    def __init__(self, rng, authors, start, days):
        self.rng = rng
        self.authors = authors
        self.start = start
        self.days = days
        self.records = []
        self.truth = {}
        self.redirects = {}
        self.next_id = 100000

    def new_id(self):
        self.next_id += self.rng.randint(1, 9)
        return "m%d" % self.next_id

    def url(self, host):
        slug = "".join(self.rng.choice("abcdefghijkmnpqrstuvwxyz23456789") for _ in range(8))
        if host in SHORTENED:
            target = self.rng.choice(SHORTENED[host])
            short = "https://%s/%s" % (host, slug)
            self.redirects[short] = "https://www.%s/article/%s" % (target, slug)
            return short
        return "https://www.%s/%s" % (host, slug) if self.rng.random() < 0.5 else "http://%s/news/%s" % (host, slug)

    def compose(self, core, label):
        st = STYLE[label]
        rng = self.rng
        parts = []
        opener = rng.choice(st["openers"])
        if opener:
            parts.append(opener)
        text = core
        if label == "rumor" and rng.random() < 0.3:
            words = text.split()
            k = rng.randrange(len(words))
            words[k] = words[k].upper()
            text = " ".join(words)
        parts.append(text[0].upper() + text[1:] if rng.random() < 0.7 else text)
        tail = rng.choice(st["tails"])
        if tail:
            parts.append(tail)
        tag = rng.choice(st["hashtags"])
        if tag:
            parts.append(tag)
        emo = rng.choice(st["emoticons"])
        if emo:
            parts.append(emo)
        mentions = []
        if rng.random() < 0.2:
            m = rng.choice(["@WHO", "@CDCgov", "@friend", "@zikanews", "@snopes"])
            parts.insert(0 if rng.random() < 0.3 else len(parts), m)
            mentions.append(m[1:])
        urls = []
        if rng.random() < 0.65:
            urls.append(self.url(rng.choice(st["hosts"])))
            parts.append(urls[0])
        if label == "rumor" and rng.random() < 0.25:
            parts[-1 if not urls else -2] += "!!"
        if rng.random() < 0.15:
            parts.append("?")
        text = " ".join(parts)
        hashtags = [w[1:] for w in text.split() if w.startswith("#") and len(w) > 1]
        return text, mentions, hashtags, urls

    def when(self, peak, spread):
        day = min(self.days - 1, max(0, int(self.rng.gauss(peak, spread))))
        return self.start + dt.timedelta(days=day, seconds=self.rng.randint(0, 86399))

    def geo_fields(self, author):
        rng = self.rng
        out = {}
        r = rng.random()
        if r < 0.05:
            out["gps"] = rng.choice([{"lat": -15.78, "lon": -47.93}, {"lat": 51.5074, "lon": -0.1278},
                                     {"lat": 25.7617, "lon": -80.1918}, {"lat": -22.9068, "lon": -43.1729},
                                     {"lat": 19.4326, "lon": -99.1332}])
        elif r < 0.12:
            out["place_name"] = rng.choice(["London", "Rio de Janeiro", "Miami", "Brasília", "Madrid"])
        if author["profile"]:
            out["author_profile_location"] = author["profile"]
        return out

    def add(self, text, created, author, language, label=None, mentions=(), hashtags=(), urls=(), is_retweet=False,
            retweet_count=0):
        created = max(created, author["created"] + dt.timedelta(days=1))
        rec = {
            "id": self.new_id(),
            "text": text,
            "created_at": ts(created),
            "language": language,
            "is_retweet": is_retweet,
            "retweet_count": retweet_count,
            "author_id": author["id"],
            "author_followers": author["followers"],
            "author_following": author["following"],
            "author_status_count": author["statuses"],
            "author_account_created": ts(author["created"]),
            "mentions": list(mentions),
            "hashtags": list(hashtags),
            "urls": list(urls),
        }
        rec.update(self.geo_fields(author))
        self.records.append(rec)
        if label:
            self.truth[rec["id"]] = label
        return rec

    def original(self, core, label, created, language="en"):
        kind = {"rumor": "advocate", "clarification": "press", "other": "citizen"}[label]
        if self.rng.random() < 0.3:
            kind = None
        author = self.authors.pick(self.rng, kind)
        text, mentions, hashtags, urls = self.compose(core, label)
        n_rt = min(12, int(self.rng.expovariate(0.8)))
        rec = self.add(text, created, author, language, label, mentions, hashtags, urls, retweet_count=n_rt)
        for _ in range(n_rt):
            fan = self.authors.pick(self.rng)
            rt_time = created + dt.timedelta(hours=self.rng.expovariate(1 / 20.0))
            self.add("RT @%s: %s" % (author["id"], text), rt_time, fan, language, label,
                     [author["id"]] + list(mentions), hashtags, urls, is_retweet=True)
        return rec


def corpus(seed, scale, start, days):
    rng = random.Random(seed)
    authors = Authors(rng, int(400 * scale) + 40, start)
    b = Builder(rng, authors, start, days)
    plan = {  # originals, class shares, rumor peak, clarification peak (None = spread out)
        "R1": (220, (0.55, 0.15, 0.30), 0.75, None),
        "R2": (90, (0.40, 0.25, 0.35), 0.40, 0.42),
        "R3": (160, (0.50, 0.30, 0.20), 0.35, 0.15),
        "R4": (180, (0.30, 0.40, 0.30), 0.20, 0.22),
        "R5": (70, (0.35, 0.40, 0.25), 0.55, 0.56),
        "R6": (60, (0.45, 0.25, 0.30), 0.65, 0.66),
    }
    for rid, (n, shares, peak, cpeak) in plan.items():
        r = RUMORS[rid]
        n = max(8, int(n * scale))
        for i in range(n):
            u = rng.random()
            label = "rumor" if u < shares[0] else "clarification" if u < shares[0] + shares[1] else "other"
            if label == "rumor":
                created = b.when(peak * days, days * 0.04)
            elif label == "clarification":
                created = b.when(cpeak * days, days * 0.04) if cpeak is not None else \
                    start + dt.timedelta(days=rng.randrange(days), seconds=rng.randint(0, 86399))
            else:
                created = start + dt.timedelta(days=rng.randrange(days), seconds=rng.randint(0, 86399))
            b.original(rng.choice(r[label]), label, created)
    for _ in range(int(150 * scale)):
        created = start + dt.timedelta(days=rng.randrange(days), seconds=rng.randint(0, 86399))
        b.original(rng.choice(OFF_TOPIC), "other", created)
    for lang, texts in FOREIGN.items():
        for _ in range(int({"es": 160, "pt": 120, "fr": 60}[lang] * scale)):
            author = authors.pick(rng)
            created = start + dt.timedelta(days=rng.randrange(days), seconds=rng.randint(0, 86399))
            b.add(rng.choice(texts) + ("" if rng.random() < 0.5 else " #zika"), created, author, lang)
    b.records.sort(key=lambda r: (r["created_at"], r["id"]))
    return b


MALFORMED = [
    '{"id": "bad01", "text": "broken json", ',
    '{"id": "bad02", "text": "gps out of range", "created_at": "2016-03-01T10:00:00Z", "language": "en", '
    '"author_id": "u0001", "author_account_created": "2015-01-01T00:00:00Z", "gps": {"lat": 123.0, "lon": 10.0}}',
    '{"id": "bad03", "text": "negative followers", "created_at": "2016-03-01T10:00:00Z", "language": "en", '
    '"author_id": "u0001", "author_followers": -5, "author_account_created": "2015-01-01T00:00:00Z"}',
    '{"text": "no id", "created_at": "2016-03-01T10:00:00Z", "language": "en", "author_id": "u0001", '
    '"author_account_created": "2015-01-01T00:00:00Z"}',
    '{"id": "bad05", "text": "posted before the account existed", "created_at": "2014-03-01T10:00:00Z", '
    '"language": "en", "author_id": "u0001", "author_account_created": "2015-01-01T00:00:00Z"}',
    '{"id": "bad06", "text": "bad timestamp", "created_at": "yesterday", "language": "en", "author_id": "u0001", '
    '"author_account_created": "2015-01-01T00:00:00Z"}',
    '{"id": "bad07", "text": "longitude out of range", "created_at": "2016-03-01T10:00:00Z", "language": "en", '
    '"author_id": "u0001", "author_account_created": "2015-01-01T00:00:00Z", "gps": {"lat": 10.0, "lon": 200.5}}',
    '{"id": "bad08", "text": 42, "created_at": "2016-03-01T10:00:00Z", "language": "en", "author_id": "u0001", '
    '"author_account_created": "2015-01-01T00:00:00Z"}',
    '{"id": "bad09", "text": "urls not a list", "created_at": "2016-03-01T10:00:00Z", "language": "en", '
    '"author_id": "u0001", "author_account_created": "2015-01-01T00:00:00Z", "urls": "http://x.com"}',
    '{"id": "bad10", "text": "retweet flag", "created_at": "2016-03-01T10:00:00Z", "language": "en", '
    '"author_id": "u0001", "author_account_created": "2015-01-01T00:00:00Z", "is_retweet": "yes"}',
    '["not", "an", "object"]',
    '{"id": "", "text": "empty id", "created_at": "2016-03-01T10:00:00Z", "language": "en", "author_id": "u0001", '
    '"author_account_created": "2015-01-01T00:00:00Z"}',
]


def write(path, text):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def jsonl(records):
    return "".join(json.dumps(r, ensure_ascii=False, sort_keys=True) + "\n" for r in records)


def tables(dest, rng):
    write(os.path.join(dest, "gazetteer_places.tsv"), "".join("%s\t%s\n" % kv for kv in [
        ("London", "GB"), ("England", "GB"), ("United Kingdom", "GB"), ("UK", "GB"),
        ("Brasília", "BR"), ("Brasilia", "BR"), ("Rio de Janeiro", "BR"), ("São Paulo", "BR"), ("Sao Paulo", "BR"),
        ("Brasil", "BR"), ("Brazil", "BR"), ("Miami", "US"), ("FL", "US"), ("Florida", "US"), ("Texas", "US"),
        ("New York", "US"), ("USA", "US"), ("Mexico City", "MX"), ("Buenos Aires", "AR"), ("Madrid", "ES"),
        ("Paris", "FR"), ("Bogotá", "CO")]))
    write(os.path.join(dest, "gazetteer_boxes.tsv"), "".join("\t".join(map(str, row)) + "\n" for row in [
        ("BR", -33.75, -73.99, 5.27, -34.79), ("GB", 49.9, -8.65, 60.85, 1.77), ("US", 24.5, -124.8, 49.4, -66.9),
        ("MX", 14.5, -118.4, 32.7, -86.7), ("AR", -55.1, -73.6, -21.8, -53.6), ("CO", -4.2, -79.0, 12.5, -66.9),
        ("ES", 36.0, -9.3, 43.8, 3.3), ("FR", 41.3, -5.1, 51.1, 9.6)]))
    senti = [(w, "positive") for w in "good great safe true relief protect happy best love news".split()]
    senti += [(w, "negative") for w in "danger deadly fear scary lie lied bad terrible crisis panic worry "
                                       "shocking false bioweapon risk dangerous crazy".split()]
    senti += [(e, "emoticon_pos") for e in [":)", ":-)", ":D"]] + [(e, "emoticon_neg") for e in [":(", ":-("]]
    write(os.path.join(dest, "sentiment.tsv"), "# entry<TAB>class\n" + "".join("%s\t%s\n" % kv for kv in senti))
    tags = {}
    for w in "i me my we us our you your he him his she her it its they them their".split():
        tags[w] = "PRON"
    for w in "is are was were be been has have had do does did make know think take see come want look use find " \
             "give tell call try ask need feel spread cause causes caused confirm confirms say says study fund " \
             "protect share delete suspect hid find grows warn".split():
        tags[w] = "VERB"
    for w in "good new old great big small real best true false natural common mild main modified dangerous " \
             "crazy clear american cuban brazilian argentine genetically".split():
        tags[w] = "ADJ"
    for w in "not just very also only again finally falsely right all along".split():
        tags[w] = "ADV"
    for w in "the a an and or but of to in on at for with by from as this that".split():
        tags[w] = "OTHER"
    write(os.path.join(dest, "tags.tsv"), "".join("%s\t%s\n" % (w, t) for w, t in sorted(tags.items())))
    vocab = sorted(set(FUNCTION_WORDS + GENERAL_WORDS + "zika virus mosquito mosquitoes vaccine health doctors "
                                                        "officials scientists".split()))
    write(os.path.join(dest, "vocabulary.txt"), "".join(w + "\n" for w in vocab))
    domains = [("naturalnews.com", "advocacy"), ("march-against-monsanto.com", "advocacy"),
               ("infowars.com", "advocacy"), ("realstrategy.net", "advocacy"),
               ("youtube.com", "social_media"), ("facebook.com", "social_media"), ("twitter.com", "social_media"),
               ("instagram.com", "social_media"), ("cnn.com", "news"), ("bbc.co.uk", "news"),
               ("nytimes.com", "news"), ("who.int", "informative"), ("cdc.gov", "informative"),
               ("snopes.com", "informative"), ("wikipedia.org", "informative"), ("paper.li", "non_informative")]
    write(os.path.join(dest, "domains.tsv"), "".join("%s\t%s\n" % kv for kv in domains))
    write(os.path.join(dest, "wikipedia_domains.txt"), "".join(d + "\n" for d in
                                                           ["who.int", "cdc.gov", "cnn.com", "bbc.co.uk",
                                                            "nytimes.com", "snopes.com"]))
    med_docs, gen_docs = [], []
    for _ in range(300):
        n = rng.randint(8, 20)
        med_docs.append(" ".join(rng.choice(MEDICAL_WORDS) if rng.random() < 0.55 else rng.choice(
            FUNCTION_WORDS + GENERAL_WORDS[:60]) for _ in range(n)))
    for _ in range(600):
        n = rng.randint(8, 20)
        gen_docs.append(" ".join(rng.choice(GENERAL_WORDS) if rng.random() < 0.6 else rng.choice(
            FUNCTION_WORDS if rng.random() < 0.95 else MEDICAL_WORDS[:20]) for _ in range(n)))
    write(os.path.join(dest, "medical_corpus.txt"), "".join(d + "\n" for d in med_docs))
    write(os.path.join(dest, "general_corpus.txt"), "".join(d + "\n" for d in gen_docs))


def config(corpus_name, truth_name, run_id, tables_dir, annotation, learn, lexicon_keep, timeline=None):
    rumors = [{"id": rid, "description": r["description"], "query": r["query"], "provenance": r["provenance"]}
              for rid, r in RUMORS.items()]
    t = tables_dir.rstrip("/") + "/"
    cfg = {
        "run_id": run_id,
        "seed": 20160201,
        "language": "en",
        "corpus": corpus_name,
        "gazetteer": {"places": t + "gazetteer_places.tsv", "boxes": t + "gazetteer_boxes.tsv"},
        "rumors": rumors,
        "annotation": dict({"mode": "simulate", "truth": truth_name}, **annotation),
        "lexicon": {"corpus_m": t + "medical_corpus.txt", "corpus_w": t + "general_corpus.txt",
                    "keep": lexicon_keep, "truncate_general": True},
        "features": {"sentiment": t + "sentiment.tsv", "tags": t + "tags.tsv", "vocabulary": t + "vocabulary.txt",
                     "domains": t + "domains.tsv", "wikipedia_domains": t + "wikipedia_domains.txt",
                     "redirects": t + "redirects.tsv"},
        "learn": learn,
        "query_top": 10,
    }
    if timeline:
        cfg["timeline"] = timeline
    return json.dumps(cfg, indent=2, ensure_ascii=False) + "\n"


def truth_tsv(truth):
    return "".join("%s\t%s\n" % (k, truth[k]) for k in sorted(truth))


EDGE_TEXTS = [
    "The cat sat on the mat.",
    "",
    "RT @cdc_news: Zika is NOT spread by #GMO mosquitoes!!! https://bit.ly/4xxfzt7h",
    "rt @who : I think you and they know it?? :) :( :-)",
    "WHY is nobody talking about this?!? #Zika#GMO # #123 @ mention",
    "Ebola, idea, area, people, business, every wednesday; queue science naive poem being.",
    "Vacunación en São Paulo: ÉPIDÉMIE? Ñandú Über café...",
    "   spaces\tand\nnewlines   between   words   ",
    "v1.2 is out... e.g. the 3rd dose at 10.30am ok",
    "email me@example.com or @@double and #hash_tag_1 plus http://WWW.NaturalNews.com/x?y=1",
    "Dangerous!!! Beautifully careful responsible hopeless political foolish basic quickly jumped running organize",
    "H1N1 H7N9 microcephaly syphilis dengue chikungunya 2016 zika-virus",
]


def features50(dest, good):
    en = [r for r in good if r["language"] == "en"]
    picks = [dict(r) for r in en[::11][:38]]
    for i, text in enumerate(EDGE_TEXTS):
        r = dict(en[i])
        r["id"] = "edge%02d" % i
        r["text"] = text
        r["urls"] = []
        r["mentions"] = []
        r["hashtags"] = []
        r["is_retweet"] = i == 3
        picks.append(r)
    assert len(picks) == 50
    write(os.path.join(dest, "messages.jsonl"), jsonl(picks))
    codes = ["BR", "GB", "US", "", "MX", "ZZ", "AR"]
    write(os.path.join(dest, "countries.tsv"),
          "".join("%s\t%s\n" % (r["id"], codes[i % len(codes)]) for i, r in enumerate(picks)))
    write(os.path.join(dest, "country_list.txt"), "".join(c + "\n" for c in sorted(["BR", "GB", "US", "MX", "AR", "CO", "ES", "FR"])))
    write(os.path.join(dest, "medical_words.txt"), "".join(w + "\n" for w in [
        "zika", "virus", "microcephaly", "syphilis", "dengue", "vaccine", "mosquito", "fever", "rash", "infection"]))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--root", default=os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
    args = ap.parse_args()
    fixtures = os.path.join(args.root, "tests", "fixtures")
    demo = os.path.join(args.root, "data", "demo")

    tables(os.path.join(fixtures, "tables"), random.Random(7))

    start = dt.datetime(2016, 2, 1, tzinfo=dt.timezone.utc)
    mini = corpus(11, 0.3, start, 90)
    good = [r for r in mini.records if r["language"] == "en"][:420] + \
        [r for r in mini.records if r["language"] != "en"][:68]
    good.sort(key=lambda r: (r["created_at"], r["id"]))
    assert len(good) == 488, len(good)
    lines = [json.dumps(r, ensure_ascii=False, sort_keys=True) for r in good]
    for i, bad in enumerate(MALFORMED):
        lines.insert(17 + i * 40, bad)
    write(os.path.join(fixtures, "mini_corpus.jsonl"), "\n".join(lines) + "\n")
    kept = {r["id"] for r in good}
    write(os.path.join(fixtures, "mini_truth.tsv"), truth_tsv({k: v for k, v in mini.truth.items() if k in kept}))
    write(os.path.join(fixtures, "tables", "redirects.tsv"),
          "".join("%s\t%s\n" % kv for kv in sorted(mini.redirects.items())))
    write(os.path.join(fixtures, "mini_config.json"), config(
        "mini_corpus.jsonl", "mini_truth.tsv", "mini", "tables",
        {"workers": [{"id": "w%02d" % i, "accuracy": a} for i, a in enumerate([0.95, 0.9, 0.9, 0.85, 0.5], 1)],
         "gold_count": 5, "min_gold": 5, "cap": 1000, "head": 700},
        {"algorithms": ["naive_bayes", "random_forest", "random_tree"], "forest_size": 20, "folds": 3,
         "gbe_inner_folds": 3, "gbe_target": 10},
        60))

    features50(os.path.join(fixtures, "features50"), good)

    big = corpus(2016, 1.0, start, 200)
    os.makedirs(demo, exist_ok=True)
    write(os.path.join(demo, "corpus.jsonl"), jsonl(big.records))
    write(os.path.join(demo, "truth.tsv"), truth_tsv(big.truth))
    shutil.copytree(os.path.join(fixtures, "tables"), os.path.join(demo, "tables"), dirs_exist_ok=True)
    redirects = dict(mini.redirects)
    redirects.update(big.redirects)
    write(os.path.join(demo, "tables", "redirects.tsv"), "".join("%s\t%s\n" % kv for kv in sorted(redirects.items())))
    write(os.path.join(demo, "config.json"), config(
        "corpus.jsonl", "truth.tsv", "demo", "tables",
        {"workers": [{"id": "w%02d" % i, "accuracy": a}
                     for i, a in enumerate([0.95, 0.93, 0.9, 0.9, 0.88, 0.85, 0.92, 0.5], 1)],
         "gold_count": 20, "min_gold": 20, "cap": 1000, "head": 700, "min_accuracy_percent": 70,
         "min_gold_attempts": 5, "min_judgments": 3, "max_judgments": 5, "gold_interval": 5},
        {"algorithms": ["naive_bayes", "random_forest", "random_tree"], "gbe_algorithm": "random_tree",
         "nested_selector": "ig", "folds": 10, "gbe_target": 10, "gbe_inner_folds": 5, "ig_top": 10,
         "forest_size": 100},
        120, {"start": "2016-02-01", "end": "2016-08-18"}))


if __name__ == "__main__":
    main()
