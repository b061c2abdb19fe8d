"""Regenerates tests/golden/prompts/*.txt from the prompt boxes of a LaTeX source.

Conversion rules: one output line per source line, trailing "\\" line breaks
dropped, runs of inner spaces collapsed, verbatim blocks copied as-is, and the escapes used in the boxes
replaced by their characters.
"""
import pathlib
import re
import sys

NAMES = {
    "System Prompt": "system",
    "Prompt for Minesweeper": "minesweeper",
    "Prompt for Hangman": "hangman",
    "Prompt for Blackjack": "blackjack",
    "Prompt for RockPaperScissors": "rps",
    "Prompt for Wordle": "wordle",
    "Prompt for Mastermind": "mastermind",
}


def convert_line(line: str) -> str:
    line = line.rstrip()
    if line.endswith("\\\\"):
        line = line[:-2]
    line = re.sub(r"\\textbackslash ?", lambda _: "\\", line)
    line = line.replace("\\textless ", "<").replace(" \\textgreater", ">")
    line = line.replace("\\quad ", "    ")
    line = line.replace("\\{", "{").replace("\\}", "}").replace("\\_", "_")
    indent = len(line) - len(line.lstrip(" "))
    return line[:indent] + re.sub(r" {2,}", " ", line[indent:]).rstrip()


def boxes(text: str):
    pattern = re.compile(r"\\begin\{tcolorbox\}\s*\[[^\]]*title=\{([^}]*)\}\]\n(.*?)\\end\{tcolorbox\}", re.S)
    for m in pattern.finditer(text):
        yield m.group(1), m.group(2)


def render(body: str) -> str:
    out = []
    verbatim = False
    for line in body.split("\n"):
        if line.strip() == "\\begin{verbatim}":
            verbatim = True
            continue
        if line.strip() == "\\end{verbatim}":
            verbatim = False
            continue
        out.append(line.rstrip() if verbatim else convert_line(line))
    while out and out[-1] == "":
        out.pop()
    return "\n".join(out)


def main() -> None:
    source = pathlib.Path(sys.argv[1]).read_text()
    dest = pathlib.Path(sys.argv[2])
    dest.mkdir(parents=True, exist_ok=True)
    for title, body in boxes(source):
        if title in NAMES:
            (dest / f"{NAMES[title]}.txt").write_text(render(body))


if __name__ == "__main__":
    main()
