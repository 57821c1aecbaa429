# Ce fichier permet à Python de traiter le répertoire comme un package
# et facilite les importations entre les modules 