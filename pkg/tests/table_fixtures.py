"""Reduction fixtures: rows "x ->. y" for the four rewrite systems.

Exponents are written as X^k and expanded by expand().
"""

import re

NPC_R2 = """
CAC CAC; CAAC ACC; cBAC ABCC
CBBC B^4C^2; CAB^2C BAcBC; cB^3C cB^3C
CBAc BBCCAc; CABAc BAAAcc; cBBAc BAAcc
cAAc A^4cc; CA^3c ACAc; cBAAc ABCAc
cBc cBc; CABc BAcc; cBBc Bcc
cABC AAcBC; CAABC AB^2C^2; cBABC AB^3C^2
"""

NPC_R3 = """
CAC CAC; CAAC CAAC; CAAAC ACC
CABAC BABCC; cBAC cBAC; cBAAC AABCC; cBBAC ABBCC
CBABC B^3CABC; CABABC BAB^4C^2; CAABABC BA^5cBC
CABBABC B^2A^4cBC; cBBABC AB^5C^2; cBABABC ABA^4cBC; cB^3ABC BA^3cBC
CBAAc B^3CAAc; CABAAc BABCAc; CAABAAc BA^8cc
CABBAAc A^4B^2CAc; cBBAAc ABBCAc; cBABAAc ABA^7cc; cB^3AAc BA^6cc
CBBAc B^6CAc; CABBAc B^2A^4cc; CAABBAc BA^2cBAc
CABBBAc BBAcBAc; cBBBAc BA^3cc; cBABBAc ABAcBAc; cB^4Ac BcBAc
CBBBC B^9C^2; CABBBC BBAcBC; CAABBBC BA^2cBBC
CABBBBC BBAcBBC; cBBBBC BcBC; cBABBBC ABAcBBC; cB^5C BcBBC
cAAAc A^9c^2; CA^4c ACAc; CA^5c ACAAc
CABAAAc BABCAAc; cBAAAc AABCAc; cBAAAAc AABCAAc; cBBAAAc ABBCAAc
cAABC A^6cBC; CAAABC AB^3C^2; CA^4BC ACABC
CABAABC BABCABC; cBAABC A^2B^4C^2; cBA^3BC AABCABC; cBBAABC ABBCABC
cABAc A^3cBAc; CAABAc BA^5cc; CAAABAc AB^3CAc
CABABAc BAB^4CAc; cBABAc ABA^4cc; cBAABAc A^2B^4CAc; cBBABAc AB^5CAc
cABBC A^3cBBC; CAABBC BAAcBC; CA^3BBC AB^6CC
CABABBC BAB^7CC; cBABBC ABAcBC; cBAABBC AAB^7CC; cBBABBC AB^8C^2
cBc cBc; CABc CABc; CAABc BAAcc
CABBc BBAcc; cBBc cBBc; cBABc ABAcc; cBBBc Bcc
"""

NTP_R2HAT = """
CaAC CC; CaAAc CAc; CaABC BBCC
cbBBC cBC; cbBAc AAcc; cbBc cc
"""

NTP_R3HAT = """
CaAC CC; CaAAAc CAAc; CaAABC CABC
CaABAc BBBCAc; CaABBC B^6C^2; CaaAC CaC
CaaAAAc CAc; CaaAABC B^3C^2; CabBABC B^3C^2
CabBAAc CAc; CabBc Cac; cbBABC A^3cBC
cbBAAc A^6c^2; cbBBAc cBAc; cbBBBC cBBC
cbBc c^2; cbaAC cbC; cbaABAc A^3c^2
cbaABBC cBC; cbbBBAc A^3c^2; cbbBBBC cBC
cbbBc cbc
"""


def expand(text):
    return re.sub(r"([A-Za-z])\^(\d+)", lambda m: m.group(1) * int(m.group(2)), text)


def rows(block):
    out = []
    for line in block.strip().splitlines():
        for item in line.split(";"):
            lhs, rhs = item.split()
            out.append((expand(lhs), expand(rhs)))
    return out


TABLES = {
    "r2": rows(NPC_R2),
    "r3": rows(NPC_R3),
    "r2hat": rows(NTP_R2HAT),
    "r3hat": rows(NTP_R3HAT),
}
