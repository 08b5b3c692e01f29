"""Published moment tables in c-form, transcribed verbatim.

These strings are the ingest data for the verification suites: they are parsed
by ``polyalg.substitute_c_form`` and compared against the walk-enumeration
output.  Keep them as close to the printed form as the parser's syntax allows;
any disagreement with the computed moments is reported with both values, never
patched here.
"""

# Adjacency moments mu_n (odd orders vanish identically).
ADJACENCY = {
    2: "t",
    4: "t + 2 t^2",
    6: "t + 6 t^2 + 5 t^3",
    8: "t + (12 + 2 c2) t^2 + 28 t^3 + 14 t^4",
    10: "t + (20 + 10 c2) t^2 + (90 + 20 c2) t^3 + 120 t^4 + 42 t^5",
    12: ("t + (30 + 30 c2 + 2 c3) t^2"
         " + (220 + 5/3 c2 (88 + 5 c2)) t^3"
         " + (550 + 132 c2) t^4 + 495 t^5 + 132 t^6"),
    14: ("t + (42 + 70 c2 + 14 c3) t^2"
         " + (455 + c2/3 (1820 + 301 c2) + 28 c3) t^3"
         " + (1820 + c2/3 (3934 + 350 c2)) t^4"
         " + (3003 + 728 c2) t^5 + 2002 t^6 + 429 t^7"),
    16: ("t + (56 + 140 c2 + 56 c3 + 2 c4) t^2"
         " + (840 + 160 c2/3 (35 + c3) + 256 c3 + 612 c2^2) t^3"
         " + (4900 + 2 c2/3 (10597 + 74 c2^2) + 1808 c2^2 + 240 c3) t^4"
         " + (12740 + 9280 c2 + 1000 c2^2) t^5"
         " + (15288 + 3640 c2) t^6 + 8008 t^7 + 1430 t^8"),
    18: ("t + (72 + 252 c2 + 168 c3 + 18 c4) t^2"
         " + (1428 + 4760 c2 + c3/5 (103 c3 + 3342 c2) + 2596 c2^2"
         "    + 1296 c3 + 36 c4) t^3"
         " + (11424 + 27462 c2 + 4 c2^2/3 (10372 + 815 c2) + 960 c2 c3"
         "    + 2754 c3) t^4"
         " + (42840 + 62484 c2 + 1632 c3 + 19185 c2^2 + 888 c2^3) t^5"
         " + (79968 + 57256 c2 + 6800 c2^2) t^6"
         " + (74256 + 17136 c2) t^7 + 31824 t^8 + 4862 t^9"),
}

# Laplacian moments nu_n.
LAPLACIAN = {
    1: "t",
    2: "2 t + t^2",
    3: "4 t + 6 t^2 + t^3",
    4: "8 t + (24 + c2) t^2 + 12 t^3 + t^4",
    5: "16 t + (80 + 10 c2) t^2 + (80 + 5 c2) t^3 + 20 t^4 + t^5",
    6: ("32 t + (240 + 60 c2 + c3) t^2"
        " + (400 + 72 c2 + 4 c2 (1 + 2 c2)/3) t^3"
        " + (200 + 15 c2) t^4 + 30 t^5 + t^6"),
    7: ("64 t + (672 + 280 c2 + 14 c3) t^2"
        " + (1680 + 588 c2 + 14 c2^2 + 7 c3 + 56 c2/3 (1 + 2 c2)) t^3"
        " + (1400 + 294 c2 + 28 c2/3 (1 + 2 c2)) t^4"
        " + (420 + 35 c2) t^5 + 42 t^6 + t^7"),
    8: ("128 t + (1792 + 1120 c2 + 112 c3 + c4) t^2"
        " + (6272 + 128 c3 + 56 c2/3 (c3 + 200) + 544 c2^2) t^3"
        " + (7840 + 28 c3 + c2/3 (9925 + 1412 c2) + 12 c2^3) t^4"
        " + (3920 + 112 c2/3 (25 + 2 c2)) t^5"
        " + (784 + 70 c2) t^6 + 56 t^7 + t^8"),
    9: ("256 t + (4608 + 4032 c2 + 672 c3 + 18 c4) t^2"
        " + (21504 + 32 c2 (595 + 131 c2) + 1296 c3"
        "    + 4 c3/5 (11 c3 + 504 c2) + 9 c4) t^3"
        " + (37632 + 4 c2^2/3 (4727 + 286 c2) + 168 c2 c3 + 25950 c2"
        "    + 648 c3) t^4"
        " + (28224 + 108 c2^3 + 2388 c2^2 + 12975 c2 + 84 c3) t^5"
        " + (9408 + 2380 c2 + 224 c2^2) t^6"
        " + (1344 + 126 c2) t^7 + 72 t^8 + t^9"),
    10: ("512 t + (11520 + 13440 c2 + 3360 c3 + 180 c4 + c5) t^2"
         " + (69120 + 26240 c2^2 + 4 c2/3 (25 c4 + 3584 c3) + 85120 c2"
         "    + 248 c3^2 + 9600 c3 + 200 c4) t^3"
         " + (161280 + 20 c2^2/9 (26897 + 2792 c2 + 137 c3) + 4447 c2 c3"
         "    + 164300 c2 + 88 c3^2 + 8100 c3 + 45 c4) t^4"
         " + (169344 + 2 c2/27 (1705527 + 56807 c2^2 + 1036 c2^3)"
         "    + 39438 c2^2 + 840 c2 c3 + 2400 c3) t^5"
         " + (84672 + 540 c2^3 + 8860 c2^2 + 41075 c2 + 210 c3) t^6"
         " + (560 c2^2 + 5320 c2 + 20160) t^7"
         " + (2160 + 210 c2) t^8 + 90 t^9 + t^10"),
}

# Diagonal-block moments m_s.
DIAG_BLOCK = {
    1: "t",
    2: "t + t^2",
    3: "t + 3 t^2 + t^3",
    4: "t + (6 + c2) t^2 + 6 t^3 + t^4",
    5: "t + (10 + 5 c2) t^2 + (20 + 5 c2) t^3 + 10 t^4 + t^5",
}
