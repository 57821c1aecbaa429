#!/usr/bin/env python
"""
Script de lancement pour potentiel_p.
Ce script permet d'exécuter la ligne de commande depuis le dossier racine:

    python run.py capacity --r 0.15 --A 2 --p 2
    python run.py verify-all --quick
"""

import sys
from scripts.main import main

if __name__ == "__main__":
    # Exécuter le programme principal
    sys.exit(main())
