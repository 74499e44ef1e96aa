from angled.main import main

main()
